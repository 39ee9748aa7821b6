#pragma once

#include <string>
#include <vector>

#include "nbcolor/graph.hpp"

namespace nbc {

// Vertex layout: a=0, b=1, v_1..v_2k = 2..2k+1, c=2k+2, d=2k+3.
Graph gen_Gk(int k);
// G_k with every multi replaced by a multiedge replacement; replacement vertices are appended.
Graph gen_Hk(int k);

// Replaces the a-b record by a single edge plus new vertices x, y, z (appended in that
// order) and singles ax, ay, xy, xz, yz, zb.
Graph multiedge_replacement(const Graph& g, int a, int b);

// k4, w5, m7, j7, j8, j12, k222 (case-insensitive). Layouts are documented in the README.
Graph base_graph(const std::string& name);
const std::vector<std::string>& base_graph_names();

// Forces w into F: new uncolored y, y' (appended), singles wy, wy' and a multi yy'.
Graph attach_force_F(const Graph& g, int w);
// Forces w into I: new Fp vertex z (appended) and a multi wz.
Graph attach_force_I(const Graph& g, int w);

}
