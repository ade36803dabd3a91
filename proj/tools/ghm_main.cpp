// ghm: command-line front end for the exact Gromov-Hausdorff toolkit.
//
// Every command prints one JSON report on stdout (except `gen`, which prints
// a space document). Failures print {"error": ..., "message": ..., "indices":
// [...]} on stderr and exit with 2 (parse/validation), 3 (size limit),
// 4 (Cauchy bound) or 5 (internal).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghm/gh.hpp"
#include "ghm/generate.hpp"
#include "ghm/gluing.hpp"
#include "ghm/hausdorff.hpp"
#include "ghm/io.hpp"
#include "ghm/realization.hpp"

namespace {

using ghm::Error;
using ghm::ErrorKind;
using ghm::FiniteMetricSpace;
using ghm::Scalar;
using nlohmann::json;

struct LoadedSpace {
    std::string path;
    ghm::NamedSpace named;
    std::string digest;
};

LoadedSpace load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return LoadedSpace{path, ghm::parse_space(text, path), ghm::sha256_hex(text)};
}

json input_json(const LoadedSpace& s) {
    return {{"path", s.path}, {"name", s.named.name}, {"points", s.named.space.size()}, {"sha256", s.digest}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorKind::ParseError, path + ": cannot write");
}

/// Comma-separated point references. A token naming a label selects that
/// point; otherwise it must be a 0-based index.
std::vector<std::size_t> resolve_points(const FiniteMetricSpace& x, const std::string& refs, const std::string& what) {
    std::vector<std::size_t> out;
    std::stringstream ss(refs);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (auto i = x.find(token)) {
            out.push_back(*i);
            continue;
        }
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(token, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (token.empty() || pos != token.size()) {
            throw Error(ErrorKind::InvalidParams, what + ": '" + token + "' is neither a label nor an index");
        }
        if (v >= x.size()) {
            throw Error(ErrorKind::IndexOutOfRange, what + ": index " + token + " out of range", {v});
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

json matrix_json(const ghm::Matrix& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.str());
        rows.push_back(std::move(r));
    }
    return rows;
}

json pairs_json(const ghm::Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    json out = json::array();
    for (const auto& [i, j] : r.pairs) out.push_back({{"left", i}, {"right", j}, {"labels", {x.label(i), y.label(j)}}});
    return out;
}

json map_json(const ghm::Embedding& e) {
    json out = json::array();
    for (std::size_t i = 0; i < e.source().size(); ++i) {
        out.push_back({{"from", e.source().label(i)}, {"to", e(i)}, {"to_label", e.target().label(e(i))}});
    }
    return out;
}

void set_value(json& report, const Scalar& v) {
    report["value"] = v.str();
    report["value_decimal"] = v.to_double();
}

class Clock {
public:
    double millis() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json base_report(const std::string& command, std::vector<json> inputs) {
    return {{"command", command},
            {"inputs", std::move(inputs)},
            {"value", nullptr},
            {"value_decimal", nullptr},
            {"witness", nullptr},
            {"nodes", nullptr},
            {"millis", 0.0}};
}

void print(json report, const Clock& clock) {
    report["millis"] = clock.millis();
    std::cout << report.dump(2) << '\n';
}

unsigned thread_count(int flag) {
    if (const char* env = std::getenv("GH_METRIC_THREADS"); env != nullptr && *env != '\0') {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidParams, std::string("GH_METRIC_THREADS='") + env + "' is not a number");
        }
    }
    return flag < 0 ? 0U : static_cast<unsigned>(flag);
}

std::vector<Scalar> parse_scalar_list(const std::string& text) {
    std::vector<Scalar> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(Scalar::parse(token));
    return out;
}

json error_json(const Error& e) {
    return {{"error", std::string(ghm::to_string(e.kind()))}, {"message", e.what()}, {"indices", e.indices()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Gromov-Hausdorff distances between finite metric spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads_flag = 0;
    std::size_t brute_limit = ghm::GhOptions{}.brute_force_limit;
    app.add_option("--threads", threads_flag, "Branch-and-bound workers (0 = all cores; GH_METRIC_THREADS overrides)");
    app.add_option("--brute-limit", brute_limit, "Largest |X|*|Y| the brute-force solver accepts");

    std::string file_a, file_b, file_c;
    std::vector<std::string> files;

    auto* validate_cmd = app.add_subcommand("validate", "Check a space file against the metric axioms");
    validate_cmd->add_option("FILE", file_a)->required();

    auto* diam_cmd = app.add_subcommand("diam", "Diameter of a space");
    diam_cmd->add_option("FILE", file_a)->required();

    std::string set_a, set_b;
    auto* hausdorff_cmd = app.add_subcommand("hausdorff", "Hausdorff distance between two point sets");
    hausdorff_cmd->add_option("AMBIENT", file_a)->required();
    hausdorff_cmd->add_option("--a", set_a, "Comma-separated labels or indices")->required();
    hausdorff_cmd->add_option("--b", set_b, "Comma-separated labels or indices")->required();

    auto* isometric_cmd = app.add_subcommand("isometric", "Decide whether two spaces are isometric");
    isometric_cmd->add_option("X", file_a)->required();
    isometric_cmd->add_option("Y", file_b)->required();

    std::size_t canonical_max = ghm::CanonicalOptions{}.max_points;
    auto* canonical_cmd = app.add_subcommand("canonical", "Relabeling-invariant canonical form");
    canonical_cmd->add_option("FILE", file_a)->required();
    canonical_cmd->add_option("--max-points", canonical_max, "Refuse larger spaces");

    std::string solver = "bnb";
    bool bounds_only = false;
    auto* gh_cmd = app.add_subcommand("gh", "Gromov-Hausdorff distance with a witnessing correspondence");
    gh_cmd->add_option("X", file_a)->required();
    gh_cmd->add_option("Y", file_b)->required();
    gh_cmd->add_option("--solver", solver)->check(CLI::IsMember({"brute", "bnb"}));
    gh_cmd->add_flag("--bounds-only", bounds_only, "Only the diameter lower bound and full-relation upper bound");

    std::string emit_path;
    auto* realize_cmd = app.add_subcommand("realize", "Common space in which X and Y sit at Hausdorff distance gh(X,Y)");
    realize_cmd->add_option("X", file_a)->required();
    realize_cmd->add_option("Y", file_b)->required();
    realize_cmd->add_option("--emit-glued", emit_path, "Write the glued space to this file");

    auto* kuratowski_cmd = app.add_subcommand("kuratowski", "Sup-norm embedding by distance rows");
    kuratowski_cmd->add_option("FILE", file_a)->required();

    std::string phi_arg, psi_arg;
    auto* glue_cmd = app.add_subcommand("glue", "Glue Y and Z along isometric copies of X");
    glue_cmd->add_option("Y", file_a)->required();
    glue_cmd->add_option("Z", file_b)->required();
    glue_cmd->add_option("--via", file_c, "The common subspace X")->required();
    glue_cmd->add_option("--phi", phi_arg, "Images in Y of X's points, in order")->required();
    glue_cmd->add_option("--psi", psi_arg, "Images in Z of X's points, in order")->required();
    glue_cmd->add_option("--emit", emit_path, "Write the glued space to this file");

    std::string bounds_arg, tail_arg;
    bool want_limit = false;
    auto* tower_cmd = app.add_subcommand("tower", "Glue a sequence of spaces into one ambient space");
    tower_cmd->add_option("FILES", files)->required();
    tower_cmd->add_option("--bounds", bounds_arg, "b0,b1,... (default 2^-n)");
    tower_cmd->add_option("--tail", tail_arg, "Sum of the bounds past the listed ones (with --bounds)");
    tower_cmd->add_flag("--limit", want_limit, "Verify the bounds and report the limit approximation");
    tower_cmd->add_option("--emit", emit_path, "Write the top level (or the limit approximation) to this file");

    std::string kind, params_arg, gen_name;
    std::uint64_t seed = 0;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a space document");
    gen_cmd->add_option("KIND", kind)->required();
    gen_cmd->add_option("PARAMS", params_arg, "k=v,k=v");
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--name", gen_name, "Name field (default: KIND)");
    gen_cmd->add_option("-o,--output", emit_path, "Write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Clock clock;
        const ghm::GhOptions gh_options{brute_limit, thread_count(threads_flag)};

        if (*validate_cmd) {
            const auto s = load(file_a);
            json report = base_report("validate", {input_json(s)});
            report["valid"] = true;
            report["labels"] = s.named.space.labels();
            print(report, clock);
        } else if (*diam_cmd) {
            const auto s = load(file_a);
            json report = base_report("diam", {input_json(s)});
            set_value(report, ghm::diam(s.named.space));
            print(report, clock);
        } else if (*hausdorff_cmd) {
            const auto s = load(file_a);
            const auto a = resolve_points(s.named.space, set_a, "--a");
            const auto b = resolve_points(s.named.space, set_b, "--b");
            json report = base_report("hausdorff", {input_json(s)});
            set_value(report, ghm::hausdorff_dist(s.named.space, a, b));
            report["a"] = a;
            report["b"] = b;
            report["directed_ab"] = ghm::directed_hausdorff(s.named.space, a, b).str();
            report["directed_ba"] = ghm::directed_hausdorff(s.named.space, b, a).str();
            print(report, clock);
        } else if (*isometric_cmd) {
            const auto x = load(file_a), y = load(file_b);
            const auto w = ghm::is_isometric(x.named.space, y.named.space);
            json report = base_report("isometric", {input_json(x), input_json(y)});
            report["isometric"] = w.has_value();
            if (w) report["witness"] = map_json(ghm::Embedding(x.named.space, y.named.space, *w));
            print(report, clock);
        } else if (*canonical_cmd) {
            const auto s = load(file_a);
            const auto c = ghm::canonicalize(s.named.space, ghm::CanonicalOptions{canonical_max});
            ghm::Matrix m(c.n, std::vector<Scalar>(c.n));
            for (std::size_t i = 0; i < c.n; ++i) {
                for (std::size_t j = 0; j < c.n; ++j) m[i][j] = c.matrix[i * c.n + j];
            }
            json report = base_report("canonical", {input_json(s)});
            report["matrix"] = matrix_json(m);
            report["permutation"] = c.permutation;
            json order = json::array();
            for (auto k : c.permutation) order.push_back(s.named.space.label(k));
            report["order"] = order;
            print(report, clock);
        } else if (*gh_cmd) {
            const auto x = load(file_a), y = load(file_b);
            const auto& sx = x.named.space;
            const auto& sy = y.named.space;
            json report = base_report("gh", {input_json(x), input_json(y)});
            report["lower_bound"] = ghm::scalar_json(ghm::lower_bound_diam(sx, sy));
            report["upper_bound"] = ghm::scalar_json(ghm::upper_bound_full(sx, sy));
            if (!bounds_only) {
                const auto r = solver == "brute" ? ghm::gh_dist_bruteforce(sx, sy, gh_options)
                                                 : ghm::gh_dist_bnb(sx, sy, gh_options);
                set_value(report, r.value);
                report["witness"] = pairs_json(r.witness, sx, sy);
                report["nodes"] = r.nodes;
                report["solver"] = solver;
            }
            print(report, clock);
        } else if (*realize_cmd) {
            const auto x = load(file_a), y = load(file_b);
            const auto r = ghm::realize(x.named.space, y.named.space, gh_options);
            json report = base_report("realize", {input_json(x), input_json(y)});
            set_value(report, r.value);
            report["witness"] = pairs_json(r.witness, x.named.space, y.named.space);
            report["glued_points"] = r.glued.size();
            report["glued_labels"] = r.glued.labels();
            report["embed_left"] = map_json(r.embed_left);
            report["embed_right"] = map_json(r.embed_right);
            report["range_left"] = r.embed_left.range();
            report["range_right"] = r.embed_right.range();
            report["hausdorff"] = ghm::hausdorff_dist(r.glued, r.embed_left.range(), r.embed_right.range()).str();
            if (!emit_path.empty()) {
                write_file(emit_path, ghm::emit_space(r.glued, x.named.name + "+" + y.named.name));
                report["emitted"] = emit_path;
            }
            print(report, clock);
        } else if (*kuratowski_cmd) {
            const auto s = load(file_a);
            const auto img = ghm::kuratowski_embed(s.named.space);
            json report = base_report("kuratowski", {input_json(s)});
            report["points"] = matrix_json(img.points);
            report["isometric"] = true;
            print(report, clock);
        } else if (*glue_cmd) {
            const auto y = load(file_a), z = load(file_b), x = load(file_c);
            const ghm::Embedding phi(x.named.space, y.named.space, resolve_points(y.named.space, phi_arg, "--phi"));
            const ghm::Embedding psi(x.named.space, z.named.space, resolve_points(z.named.space, psi_arg, "--psi"));
            const auto g = ghm::glue(phi, psi, {"y:", "z:"});
            json report = base_report("glue", {input_json(y), input_json(z), input_json(x)});
            report["points"] = g.space.size();
            report["labels"] = g.space.labels();
            report["distances"] = matrix_json(g.space.matrix());
            report["from_left"] = map_json(g.from_left);
            report["from_right"] = map_json(g.from_right);
            if (!emit_path.empty()) {
                write_file(emit_path, ghm::emit_space(g.space, y.named.name + "+" + z.named.name));
                report["emitted"] = emit_path;
            }
            print(report, clock);
        } else if (*tower_cmd) {
            std::vector<LoadedSpace> loaded;
            std::vector<json> inputs;
            std::vector<FiniteMetricSpace> spaces;
            for (const auto& f : files) {
                loaded.push_back(load(f));
                inputs.push_back(input_json(loaded.back()));
                spaces.push_back(loaded.back().named.space);
            }
            if (!tail_arg.empty() && bounds_arg.empty()) {
                throw Error(ErrorKind::InvalidParams, "--tail needs --bounds");
            }
            const auto bounds = bounds_arg.empty()
                                    ? ghm::BoundSequence::dyadic()
                                    : ghm::BoundSequence::listed(parse_scalar_list(bounds_arg),
                                                                 tail_arg.empty() ? Scalar(0) : Scalar::parse(tail_arg));
            json report = base_report("tower", inputs);
            json levels = json::array();
            std::vector<ghm::TowerLevel> tower;
            if (want_limit) {
                auto lim = ghm::cauchy_limit(spaces, bounds, gh_options);
                set_value(report, lim.error_bound);
                report["error_bound"] = ghm::scalar_json(lim.error_bound);
                report["limit_points"] = lim.limit_points;
                report["limit_distances"] = matrix_json(lim.limit_approx.matrix());
                json gh_steps = json::array(), h_steps = json::array();
                for (const auto& v : lim.gh_steps) gh_steps.push_back(v.str());
                for (const auto& v : lim.hausdorff_steps) h_steps.push_back(v.str());
                report["gh_steps"] = gh_steps;
                report["hausdorff_steps"] = h_steps;
                if (!emit_path.empty()) write_file(emit_path, ghm::emit_space(lim.limit_approx, "limit"));
                tower = std::move(lim.tower);
            } else {
                tower = ghm::build_tower(spaces, gh_options);
                const auto& top = tower.back();
                json h_steps = json::array();
                for (std::size_t k = 0; k + 1 < spaces.size(); ++k) {
                    h_steps.push_back(
                        ghm::hausdorff_dist(top.space, top.embed_all[k].range(), top.embed_all[k + 1].range()).str());
                }
                report["hausdorff_steps"] = h_steps;
                if (!emit_path.empty()) write_file(emit_path, ghm::emit_space(top.space, "tower"));
            }
            for (const auto& level : tower) levels.push_back(level.space.size());
            report["level_sizes"] = levels;
            json copies = json::array();
            for (const auto& e : tower.back().embed_all) copies.push_back(e.map());
            report["copies"] = copies;
            if (!emit_path.empty()) report["emitted"] = emit_path;
            print(report, clock);
        } else if (*gen_cmd) {
            const auto params = params_arg.empty() ? ghm::GeneratorParams{} : ghm::parse_params(params_arg);
            const auto x = ghm::generate(kind, params, seed);
            const std::string text = ghm::emit_space(x, gen_name.empty() ? kind : gen_name);
            if (emit_path.empty()) {
                std::cout << text;
            } else {
                write_file(emit_path, text);
            }
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << error_json(e).dump() << '\n';
        return ghm::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}, {"indices", json::array()}}.dump() << '\n';
        return 5;
    }
}
