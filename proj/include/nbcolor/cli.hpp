#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nbc {

struct RunReport {
    std::string command;
    std::string input;
    std::string digest;  // FNV-1a of the input bytes, hex
    std::string status;  // colored, cert-low-potential, cert-forbidden, not-near-bipartite or error
    std::string json;    // the full report as one JSON object
    double wall_seconds = 0;
};

struct ColorRequest {
    std::string mode = "auto";  // auto, multi, simple or brute
    std::string catalog_dir;
    int brute_threshold = 22;
    bool trace = false;
};

RunReport color_file(const std::string& path, const ColorRequest& req);

// One report per .nbg file in dir, in file-name order; files are processed on `jobs` threads.
std::vector<RunReport> batch(const std::string& dir, const ColorRequest& req, int jobs);

// Exit 0 on colored/ok, 2 on a certificate or witness, 1 on usage or I/O errors.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}
