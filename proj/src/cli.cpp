#include "nbcolor/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbcolor/families.hpp"
#include "nbcolor/forbidden.hpp"
#include "nbcolor/generate.hpp"
#include "nbcolor/min_potential.hpp"
#include "nbcolor/oracle.hpp"
#include "nbcolor/potential.hpp"
#include "nbcolor/solver.hpp"

namespace nbc {

namespace {

using json = nlohmann::ordered_json;

std::string read_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digest(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

PotentialKind parse_kind(const std::string& k)
{
    if (k == "m" || k == "multi") return PotentialKind::multigraph;
    if (k == "s" || k == "simple") return PotentialKind::simple;
    throw CLI::ValidationError("--kind", "expected m or s");
}

VertexSet parse_set(const std::string& text, int n)
{
    if (text == "all") return all_vertices(n);
    VertexSet W;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) W.push_back(std::stoi(item));
    std::sort(W.begin(), W.end());
    W.erase(std::unique(W.begin(), W.end()), W.end());
    for (int v : W)
        if (v < 0 || v >= n) throw std::runtime_error("vertex " + std::to_string(v) + " out of range");
    return W;
}

json embedding_json(const Embedding& e)
{
    return json{{"member", e.name}, {"map", e.map}};
}

json outcome_json(const Outcome& o)
{
    json j;
    j["status"] = outcome_kind(o);
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Colored>) {
                j["I"] = x.coloring.I();
                j["F"] = x.coloring.F();
            } else if constexpr (std::is_same_v<T, CertLowPotential>) {
                j["W"] = x.W;
                j["rho"] = x.rho;
                j["threshold"] = x.threshold;
            } else if constexpr (std::is_same_v<T, CertForbidden>) {
                j["embedding"] = embedding_json(x.embedding);
            } else {
                j["step"] = x.step;
                j["message"] = x.message;
            }
        },
        o);
    return j;
}

int exit_for(const std::string& status)
{
    if (status == "colored") return 0;
    if (status == "error") return 1;
    return 2;
}

json trace_json(const SolveTrace& t)
{
    json events = json::array();
    for (const auto& e : t.events)
        events.push_back({{"depth", e.depth}, {"step", e.step}, {"n", e.n}, {"m", e.m}, {"detail", e.detail}});
    return events;
}

}

RunReport color_file(const std::string& path, const ColorRequest& req)
{
    RunReport r;
    r.command = "color";
    r.input = path;
    auto start = std::chrono::steady_clock::now();
    json j;
    j["command"] = "color";
    j["input"] = path;
    json body;
    SolveTrace trace;
    try {
        std::string bytes = read_bytes(path);
        r.digest = digest(bytes);
        j["digest"] = r.digest;
        Graph g = parse_nbg(bytes);
        std::string mode = req.mode;
        bool multis = g.has_kind(EdgeKind::multi), gadgets = g.has_kind(EdgeKind::gadget);
        if (mode == "auto") {
            if (multis && gadgets) throw std::runtime_error("input mixes multis and gadgets");
            mode = multis ? "multi" : "simple";
        }
        j["mode"] = mode;
        SolveOptions opt;
        opt.brute_threshold = req.brute_threshold;
        if (mode == "brute") {
            BruteOptions bo;
            bo.threshold = req.brute_threshold;
            auto c = brute_nb_color(g, bo);
            body = c ? outcome_json(Colored{*c}) : json{{"status", "not-near-bipartite"}};
        } else if (mode == "multi") {
            body = outcome_json(color_multigraph(g, opt, &trace));
        } else if (mode == "simple") {
            Catalog cat = resolve_catalog(req.catalog_dir);
            body = outcome_json(color_simple(g, cat, opt, &trace));
        } else {
            throw std::runtime_error("unknown mode " + mode);
        }
    } catch (const std::exception& e) {
        body = {{"status", "error"}, {"message", e.what()}};
    }
    r.status = body["status"].get<std::string>();
    for (auto& [k, v] : body.items()) j[k] = v;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (req.trace) j["trace"] = trace_json(trace);
    j["wall_seconds"] = r.wall_seconds;
    r.json = j.dump();
    return r;
}

std::vector<RunReport> batch(const std::string& dir, const ColorRequest& req, int jobs)
{
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".nbg") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<RunReport> out(files.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < files.size();) out[i] = color_file(files[i], req);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"nb-coloring of sparse multigraphs and simple graphs", "nbcolor"};
    app.require_subcommand(1);
    int code = 0;

    std::string kind = "m", set = "all", input, extremal = "largest";
    int m1 = 0, m2 = 0;

    auto* potential = app.add_subcommand("potential", "Potential of a vertex set");
    potential->add_option("--kind", kind)->required();
    potential->add_option("--set", set);
    potential->add_option("input", input)->required();
    potential->callback([&] {
        Graph g = read_nbg_file(input);
        out << rho(g, parse_set(set, g.n()), parse_kind(kind)) << "\n";
    });

    auto* minpot = app.add_subcommand("minpot", "Minimum-potential vertex set");
    minpot->add_option("--kind", kind)->required();
    minpot->add_option("--min-size", m1);
    minpot->add_option("--max-co-size", m2);
    minpot->add_option("--extremal", extremal)->check(CLI::IsMember({"largest", "smallest", "any"}));
    minpot->add_option("input", input)->required();
    minpot->callback([&] {
        Graph g = read_nbg_file(input);
        Extremal ex = extremal == "largest" ? Extremal::largest : extremal == "smallest" ? Extremal::smallest : Extremal::any;
        auto r = min_potential_graph(g, parse_kind(kind), m1, m2, ex);
        out << json{{"W", r.W}, {"rho", r.rho}}.dump() << "\n";
    });

    auto* check = app.add_subcommand("check", "Sparsity and criticality checks");
    check->require_subcommand(1);
    std::string a = "3/2", b = "-1";
    auto* sparse = check->add_subcommand("sparse", "(a,b)-sparsity");
    sparse->add_option("--a", a);
    sparse->add_option("--b", b);
    sparse->add_option("input", input)->required();
    sparse->callback([&] {
        Graph g = read_nbg_file(input);
        auto r = check_sparse(g, {Rational::parse(a), Rational::parse(b)});
        out << json{{"sparse", r.ok}, {"witness", r.witness}, {"min_slack", r.min_slack.str()}}.dump() << "\n";
        code = r.ok ? 0 : 2;
    });
    auto* critical = check->add_subcommand("critical", "nb-criticality by exhaustive search");
    critical->add_option("input", input)->required();
    critical->callback([&] {
        bool ok = is_nb_critical(read_nbg_file(input));
        out << json{{"nb_critical", ok}}.dump() << "\n";
        code = ok ? 0 : 2;
    });
    auto* critical4 = check->add_subcommand("4critical", "4-criticality by exhaustive search");
    critical4->add_option("input", input)->required();
    critical4->callback([&] {
        bool ok = is_4_critical(read_nbg_file(input));
        out << json{{"four_critical", ok}}.dump() << "\n";
        code = ok ? 0 : 2;
    });

    ColorRequest req;
    auto* color = app.add_subcommand("color", "Find an nb-coloring or a certificate");
    color->add_option("--mode", req.mode)->check(CLI::IsMember({"auto", "multi", "simple", "brute"}));
    color->add_option("--catalog", req.catalog_dir);
    color->add_option("--brute-threshold", req.brute_threshold);
    color->add_flag("--trace", req.trace);
    color->add_option("input", input)->required();
    color->callback([&] {
        RunReport r = color_file(input, req);
        out << r.json << "\n";
        code = exit_for(r.status);
    });

    std::string dir;
    int jobs = 1;
    auto* batch_cmd = app.add_subcommand("batch", "Color every .nbg file of a directory");
    batch_cmd->add_option("--mode", req.mode)->check(CLI::IsMember({"auto", "multi", "simple", "brute"}));
    batch_cmd->add_option("--catalog", req.catalog_dir);
    batch_cmd->add_option("--brute-threshold", req.brute_threshold);
    batch_cmd->add_option("--jobs", jobs);
    batch_cmd->add_option("dir", dir)->required();
    batch_cmd->callback([&] {
        if (!std::filesystem::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
        json arr = json::array();
        for (const auto& r : batch(dir, req, jobs)) arr.push_back(json::parse(r.json));
        out << arr.dump() << "\n";
    });

    std::string output, name;
    int k = 1, n = 20;
    std::uint64_t seed = 1;
    auto* gen = app.add_subcommand("gen", "Generate named graphs");
    gen->require_subcommand(1);
    auto writer = [&](const Graph& g) {
        if (output.empty() || output == "-")
            out << to_nbg(g);
        else
            write_nbg_file(g, output);
    };
    auto* gk = gen->add_subcommand("gk", "G_k");
    gk->add_option("--k", k)->required();
    gk->add_option("-o", output);
    gk->callback([&] { writer(gen_Gk(k)); });
    auto* hk = gen->add_subcommand("hk", "H_k");
    hk->add_option("--k", k)->required();
    hk->add_option("-o", output);
    hk->callback([&] { writer(gen_Hk(k)); });
    auto* base = gen->add_subcommand("base", "Base graph by name");
    base->add_option("--name", name)->required();
    base->add_option("-o", output);
    base->callback([&] { writer(base_graph(name)); });
    auto* rnd = gen->add_subcommand("random", "Random hypothesis-satisfying instance");
    rnd->add_option("--kind", kind)->required();
    rnd->add_option("--n", n);
    rnd->add_option("--seed", seed);
    rnd->add_option("-o", output);
    rnd->callback([&] {
        std::mt19937_64 rng(seed);
        GenOptions go;
        go.n = n;
        if (parse_kind(kind) == PotentialKind::multigraph)
            writer(random_multigraph(rng, go));
        else
            writer(random_simple(rng, go, resolve_catalog()));
    });

    std::string catalog_dir;
    int s = -1, t = -1;
    auto* linked = app.add_subcommand("linked", "Are two vertices linked");
    linked->add_option("--s", s)->required();
    linked->add_option("--t", t)->required();
    linked->add_option("--catalog", catalog_dir);
    linked->add_option("input", input)->required();
    linked->callback([&] {
        Graph g = read_nbg_file(input);
        if (s < 0 || s >= g.n() || t < 0 || t >= g.n()) throw std::runtime_error("vertex out of range");
        auto w = are_linked(g, s, t, resolve_catalog(catalog_dir));
        json j{{"linked", w.has_value()}};
        if (w) j["witness"] = {{"member", w->name}, {"v", w->v}, {"w", w->w}, {"map", w->map}};
        out << j.dump() << "\n";
        code = w ? 2 : 0;
    });

    auto* forbidden = app.add_subcommand("forbidden", "Search for a catalog member");
    forbidden->add_option("--catalog", catalog_dir);
    forbidden->add_option("input", input)->required();
    forbidden->callback([&] {
        auto e = find_forbidden_subgraph(read_nbg_file(input), resolve_catalog(catalog_dir));
        json j{{"found", e.has_value()}};
        if (e) j["embedding"] = embedding_json(*e);
        out << j.dump() << "\n";
        code = e ? 2 : 0;
    });

    int bound = 12;
    auto* catalog = app.add_subcommand("catalog", "Build and save the forbidden catalog");
    catalog->add_option("--bound", bound);
    catalog->add_option("-o", output)->required();
    catalog->callback([&] {
        Catalog c = build_catalog(bound);
        save_catalog(c, output);
        json names = json::array();
        for (const auto& m : c.members) names.push_back(m.name);
        out << json{{"members", names}}.dump() << "\n";
    });

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.push_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        err << "nbcolor: " << e.what() << "\n";
        return 1;
    }
    return code;
}

}
