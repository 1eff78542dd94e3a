// idsrun: reproducible experiment runner around the ids library.
//
// One JSON config per run; results land in <out>/<command>-<seed>/ as CSV
// curves plus a manifest with content digests. The same (config, seed)
// always produces byte-identical CSVs.

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ids/estimators.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ids;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sha256_hex(const fs::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw std::runtime_error("cannot reopen output file for digesting");
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (is.read(buf, sizeof buf) || is.gcount() > 0)
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(is.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        char b[3];
        std::snprintf(b, sizeof b, "%02x", md[i]);
        hex += b;
    }
    return hex;
}

// ---------------------------------------------------------------- config

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) bad(path.empty() ? k : path + "." + k, "unknown key");
}

const json& need(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) bad(path.empty() ? key : path + "." + key, "missing required key");
    return *it;
}

double num_in(const json& v, const std::string& path, double lo, double hi) {
    if (!v.is_number()) bad(path, "expected a number");
    double x = v.get<double>();
    if (!(x >= lo && x <= hi))
        bad(path, "out of range [" + fmt17(lo) + ", " + fmt17(hi) + "]");
    return x;
}

int int_in(const json& v, const std::string& path, std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    std::int64_t x = v.get<std::int64_t>();
    if (x < lo || x > hi)
        bad(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
}

ColouringSpec parse_colouring(const json& v, const std::string& path, Alphabet alpha) {
    if (!v.is_object()) bad(path, "expected an object");
    check_keys(v, path, {"rule", "symbol", "period", "cell", "probs"});
    const std::string rule = need(v, path, "rule").get<std::string>();
    const int n = alpha.size();
    if (rule == "constant") {
        int sym = v.contains("symbol") ? int_in(v["symbol"], path + ".symbol", 0, n - 1) : 0;
        return ColouringSpec::constant(static_cast<std::uint8_t>(sym), std::move(alpha));
    }
    if (rule == "periodic") {
        int period = int_in(need(v, path, "period"), path + ".period", 1, 64);
        const json& cj = need(v, path, "cell");
        if (!cj.is_array()) bad(path + ".cell", "expected an array");
        std::vector<std::uint8_t> cell;
        for (std::size_t i = 0; i < cj.size(); ++i)
            cell.push_back(static_cast<std::uint8_t>(
                int_in(cj[i], path + ".cell[" + std::to_string(i) + "]", 0, n - 1)));
        return ColouringSpec::periodic(period, std::move(cell), std::move(alpha));
    }
    if (rule == "visible") {
        if (n != 2) bad(path, "visible-point colourings need a two-symbol alphabet");
        return ColouringSpec::visible(std::move(alpha));
    }
    if (rule == "iid") {
        const json& pj = need(v, path, "probs");
        if (!pj.is_array() || static_cast<int>(pj.size()) != n)
            bad(path + ".probs", "expected " + std::to_string(n) + " probabilities");
        std::vector<double> probs;
        double sum = 0.0;
        for (std::size_t i = 0; i < pj.size(); ++i) {
            probs.push_back(num_in(pj[i], path + ".probs[" + std::to_string(i) + "]", 0.0, 1.0));
            sum += probs.back();
        }
        if (std::abs(sum - 1.0) > 1e-9) bad(path + ".probs", "must sum to 1");
        return ColouringSpec::iid(std::move(probs), std::move(alpha));
    }
    bad(path + ".rule", "unknown rule '" + rule + "'");
}

std::vector<double> parse_potentials(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) bad(path, "expected a non-empty array");
    std::vector<double> pots;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const json& e = v[i];
        const std::string p = path + "[" + std::to_string(i) + "]";
        if (e.is_string() && e.get<std::string>() == "inf")
            pots.push_back(kDeleted);
        else if (e.is_number())
            pots.push_back(e.get<double>());
        else
            bad(p, "expected a number or \"inf\"");
    }
    return pots;
}

/// Independent-bit mask probabilities: each of `bits` bits is set (edge
/// removed) with probability 1-p.
std::vector<double> mask_probs(double p, int bits) {
    std::vector<double> probs(std::size_t{1} << bits);
    for (std::size_t mask = 0; mask < probs.size(); ++mask) {
        double q = 1.0;
        for (int b = 0; b < bits; ++b) q *= (mask >> b) & 1u ? 1.0 - p : p;
        probs[mask] = q;
    }
    return probs;
}

BCTag parse_tag(const json& v, const std::string& path) {
    const std::string s = v.is_string() ? v.get<std::string>() : "";
    if (s == "D") return BCTag::Dirichlet;
    if (s == "N") return BCTag::Neumann;
    if (s == "K") return BCTag::Kirchhoff;
    bad(path, "expected one of \"D\", \"N\", \"K\"");
}

ModelHandle parse_model(const json& v, int dim) {
    if (!v.is_object()) bad("model", "expected an object");
    const std::string kind = need(v, "model", "kind").get<std::string>();
    ModelHandle m;
    m.dim = dim;

    if (kind == "adjacency") {
        check_keys(v, "model", {"kind", "colouring"});
        m.comb.kind = CombModelSpec::Kind::Adjacency;
        Alphabet alpha = Alphabet::potentials_of({0.0});
        m.comb_colouring = v.contains("colouring")
                               ? parse_colouring(v["colouring"], "model.colouring", alpha)
                               : ColouringSpec::constant(0, alpha);
        return m;
    }
    if (kind == "site_percolation") {
        check_keys(v, "model", {"kind", "p", "potentials", "colouring"});
        m.comb.kind = CombModelSpec::Kind::SitePercolation;
        if (v.contains("p")) {
            if (v.contains("potentials") || v.contains("colouring"))
                bad("model.p", "give either p or an explicit alphabet, not both");
            double p = num_in(v["p"], "model.p", 0.0, 1.0);
            m.comb_colouring = ColouringSpec::iid({1.0 - p, p}, Alphabet::site_percolation());
            return m;
        }
        Alphabet alpha = Alphabet::potentials_of(
            parse_potentials(need(v, "model", "potentials"), "model.potentials"));
        m.comb_colouring = parse_colouring(need(v, "model", "colouring"), "model.colouring", alpha);
        return m;
    }
    if (kind == "periodic_block") {
        check_keys(v, "model", {"kind", "period", "fiber_dim", "range", "blocks"});
        m.comb.kind = CombModelSpec::Kind::PeriodicBlock;
        m.comb.period = int_in(need(v, "model", "period"), "model.period", 1, 64);
        m.comb.fiber_dim = int_in(need(v, "model", "fiber_dim"), "model.fiber_dim", 1, 16);
        m.comb.range = v.contains("range") ? int_in(v["range"], "model.range", 1, 8) : 1;
        const json& bj = need(v, "model", "blocks");
        if (!bj.is_array()) bad("model.blocks", "expected an array");
        for (std::size_t i = 0; i < bj.size(); ++i) {
            const std::string bp = "model.blocks[" + std::to_string(i) + "]";
            const json& b = bj[i];
            if (!b.is_object()) bad(bp, "expected an object");
            check_keys(b, bp, {"cell", "hop", "mat"});
            PeriodicBlock blk;
            auto fill = [&](const char* key, auto& arr, int lo, int hi) {
                const json& a = need(b, bp, key);
                if (!a.is_array() || static_cast<int>(a.size()) != dim)
                    bad(bp + "." + key, "expected " + std::to_string(dim) + " entries");
                for (int j = 0; j < dim; ++j)
                    arr[static_cast<std::size_t>(j)] =
                        int_in(a[static_cast<std::size_t>(j)],
                               bp + "." + key + "[" + std::to_string(j) + "]", lo, hi);
            };
            fill("cell", blk.cell, 0, m.comb.period - 1);
            fill("hop", blk.hop, -m.comb.range, m.comb.range);
            const json& mj = need(b, bp, "mat");
            const int fd = m.comb.fiber_dim;
            if (!mj.is_array() || static_cast<int>(mj.size()) != fd * fd)
                bad(bp + ".mat", "expected fiber_dim^2 entries");
            for (std::size_t k = 0; k < mj.size(); ++k)
                blk.mat.push_back(
                    num_in(mj[k], bp + ".mat[" + std::to_string(k) + "]", -1e30, 1e30));
            m.comb.blocks.push_back(std::move(blk));
        }
        m.comb.validate();
        m.comb_colouring = ColouringSpec::constant(0, Alphabet::none(1));
        return m;
    }
    if (kind == "quantum") {
        check_keys(v, "model", {"kind", "bc_model", "p", "bc", "tags", "lengths", "mesh"});
        m.kind = ModelHandle::Kind::Quantum;
        const std::string bm =
            v.contains("bc_model") ? v["bc_model"].get<std::string>() : "edge_percolation";
        if (bm == "per_vertex")
            m.quantum.bc_model = QuantumModelSpec::BcModel::PerVertex;
        else if (bm == "edge_percolation")
            m.quantum.bc_model = QuantumModelSpec::BcModel::EdgePercolation;
        else if (bm == "site_edge_percolation")
            m.quantum.bc_model = QuantumModelSpec::BcModel::SiteEdgePercolation;
        else
            bad("model.bc_model", "unknown boundary-condition model '" + bm + "'");
        m.quantum.mesh = v.contains("mesh") ? int_in(v["mesh"], "model.mesh", 2, 10000) : 100;

        if (m.quantum.bc_model == QuantumModelSpec::BcModel::PerVertex) {
            if (v.contains("p")) bad("model.p", "p applies to percolation models only");
            const json& tj = need(v, "model", "tags");
            if (!tj.is_array() || tj.empty()) bad("model.tags", "expected a non-empty array");
            std::vector<BCTag> tags;
            for (std::size_t i = 0; i < tj.size(); ++i)
                tags.push_back(parse_tag(tj[i], "model.tags[" + std::to_string(i) + "]"));
            m.quantum.bc = parse_colouring(need(v, "model", "bc"), "model.bc",
                                           Alphabet::bc_tags(std::move(tags)));
        } else {
            const int bits =
                m.quantum.bc_model == QuantumModelSpec::BcModel::EdgePercolation ? dim : 2 * dim;
            Alphabet alpha = Alphabet::none(1 << bits);
            if (v.contains("p")) {
                if (v.contains("bc")) bad("model.p", "give either p or an explicit bc colouring");
                double p = num_in(v["p"], "model.p", 0.0, 1.0);
                m.quantum.bc = ColouringSpec::iid(mask_probs(p, bits), std::move(alpha));
            } else {
                m.quantum.bc =
                    parse_colouring(need(v, "model", "bc"), "model.bc", std::move(alpha));
            }
            if (v.contains("tags")) bad("model.tags", "tags apply to the per-vertex model only");
        }

        if (v.contains("lengths")) {
            const json& lj = v["lengths"];
            if (!lj.is_object()) bad("model.lengths", "expected an object");
            check_keys(lj, "model.lengths", {"values", "rule", "symbol", "period", "cell", "probs"});
            const json& vals = need(lj, "model.lengths", "values");
            if (!vals.is_array() || vals.empty())
                bad("model.lengths.values", "expected a non-empty array");
            std::vector<std::array<double, kMaxDim>> lvs;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                const std::string p = "model.lengths.values[" + std::to_string(i) + "]";
                const json& e = vals[i];
                std::array<double, kMaxDim> lv{};
                lv.fill(1.0);
                if (e.is_number()) {
                    double l = num_in(e, p, 1e-6, 1e6);
                    for (int j = 0; j < dim; ++j) lv[static_cast<std::size_t>(j)] = l;
                } else if (e.is_array() && static_cast<int>(e.size()) == dim) {
                    for (int j = 0; j < dim; ++j)
                        lv[static_cast<std::size_t>(j)] = num_in(
                            e[static_cast<std::size_t>(j)], p + "[" + std::to_string(j) + "]",
                            1e-6, 1e6);
                } else {
                    bad(p, "expected a number or an array of " + std::to_string(dim));
                }
                lvs.push_back(lv);
            }
            json rest = lj;
            rest.erase("values");
            m.quantum.lengths = parse_colouring(rest, "model.lengths", Alphabet::lengths(lvs));
        }
        return m;
    }
    bad("model.kind", "unknown kind '" + kind + "'");
}

struct RunConfig {
    std::string command;
    int dim = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    ModelHandle model;
    std::pair<double, double> window{0.0, 0.0};
    std::vector<int> sides;
    int side = 0;
    int pattern_side = 0;
    int samples = 0;
    int cell_side = 1;
    int buffer_radius = 0;
    GroupChoice group = GroupChoice::TranslationsOnly;
    double min_jump = 0.01;
    bool weighted = false;
    json echo;
};

RunConfig parse_config(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config file not found: " + path.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    static const std::set<std::string> commands = {
        "frequencies", "ids-comb", "ids-quantum", "ids-lengths", "converge", "jumps", "shubin"};
    check_keys(j, "", {"command", "d", "seed", "model", "window", "sides", "side", "pattern_side",
                       "samples", "cell_side", "buffer_radius", "group", "min_jump", "weighted",
                       "threads"});

    RunConfig c;
    c.echo = j;
    c.command = need(j, "", "command").get<std::string>();
    if (!commands.count(c.command)) bad("command", "unknown command '" + c.command + "'");
    c.dim = int_in(need(j, "", "d"), "d", 1, kMaxDim);
    c.model = parse_model(need(j, "", "model"), c.dim);

    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0)
            bad("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
        c.seed_given = true;
    }

    c.window = c.model.default_window();
    if (j.contains("window")) {
        const json& w = j["window"];
        if (!w.is_array() || w.size() != 2) bad("window", "expected [a, b]");
        c.window = {num_in(w[0], "window[0]", -1e30, 1e30), num_in(w[1], "window[1]", -1e30, 1e30)};
        if (!(c.window.first < c.window.second)) bad("window", "must satisfy a < b");
    }

    const bool is_quantum = c.model.kind == ModelHandle::Kind::Quantum;
    if (c.command == "ids-comb" && is_quantum) bad("model.kind", "ids-comb needs a lattice model");
    if ((c.command == "ids-quantum" || c.command == "ids-lengths") && !is_quantum)
        bad("model.kind", "this command needs a quantum model");
    if (c.command == "ids-lengths" && !c.model.quantum.lengths)
        bad("model.lengths", "ids-lengths needs a random-lengths model");
    if (c.command == "jumps" && is_quantum) bad("model.kind", "jumps needs a lattice model");

    if (c.command == "converge") {
        const json& sj = need(j, "", "sides");
        if (!sj.is_array() || sj.size() < 3) bad("sides", "expected at least three sides");
        for (std::size_t i = 0; i < sj.size(); ++i)
            c.sides.push_back(int_in(sj[i], "sides[" + std::to_string(i) + "]", 2, 1 << 20));
        if (!std::is_sorted(c.sides.begin(), c.sides.end())) bad("sides", "must be ascending");
    } else if (j.contains("sides")) {
        bad("sides", "only the converge command takes a side list");
    }

    if (c.command == "frequencies" || c.command == "ids-comb" || c.command == "ids-quantum" ||
        c.command == "ids-lengths" || c.command == "jumps")
        c.side = int_in(need(j, "", "side"), "side", 2, 1 << 20);
    else if (j.contains("side"))
        bad("side", "not used by this command");

    if (c.command == "frequencies") {
        c.pattern_side = int_in(need(j, "", "pattern_side"), "pattern_side", 1, 64);
        if (j.contains("group")) {
            const std::string g = j["group"].get<std::string>();
            if (g == "translations")
                c.group = GroupChoice::TranslationsOnly;
            else if (g == "full")
                c.group = GroupChoice::Full;
            else
                bad("group", "expected \"translations\" or \"full\"");
        }
    } else if (j.contains("pattern_side") || j.contains("group")) {
        bad(j.contains("pattern_side") ? "pattern_side" : "group", "not used by this command");
    }

    if (c.command == "shubin") {
        c.samples = int_in(need(j, "", "samples"), "samples", 1, 1 << 20);
        c.cell_side = j.contains("cell_side") ? int_in(j["cell_side"], "cell_side", 1, 1024) : 1;
        c.buffer_radius = int_in(need(j, "", "buffer_radius"), "buffer_radius", 1, 1 << 20);
    } else if (j.contains("samples") || j.contains("cell_side") || j.contains("buffer_radius")) {
        bad("samples", "sampling keys are for the shubin command");
    }

    if (c.command == "jumps" && j.contains("min_jump"))
        c.min_jump = num_in(j["min_jump"], "min_jump", 0.0, 1e30);
    else if (j.contains("min_jump") && c.command != "jumps")
        bad("min_jump", "not used by this command");

    if (j.contains("weighted")) {
        if (c.command != "converge") bad("weighted", "not used by this command");
        if (!j["weighted"].is_boolean()) bad("weighted", "expected a boolean");
        c.weighted = j["weighted"].get<bool>();
    }
    if (j.contains("threads")) int_in(j["threads"], "threads", 1, 4096);  // hint only

    // a missing seed for a stochastic model is checked after --seed overrides
    return c;
}

// ------------------------------------------------------------------- run

void write_curve(const fs::path& file, const StepFunction& f) {
    std::ofstream os(file);
    f.write_csv(os);
    if (!os) throw std::runtime_error("failed writing " + file.string());
}

int run(const RunConfig& c, const fs::path& out_root) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir = out_root / (c.command + "-" + std::to_string(c.seed));
    fs::create_directories(dir);

    json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = c.command;
    manifest["seed"] = c.seed;
    manifest["config"] = c.echo;
    std::vector<std::string> files;

    try {
        if (c.command == "frequencies") {
            const ColouringSpec& spec = c.model.kind == ModelHandle::Kind::Combinatorial
                                            ? c.model.comb_colouring
                                            : c.model.quantum.bc;
            Colouring col = spec.instantiate(c.dim, c.seed);
            FrequencyTable t = estimate_frequencies(col, origin_cube(c.side, c.dim),
                                                    c.pattern_side, c.group);
            std::ofstream os(dir / "frequencies.csv");
            write_frequency_dump(t, os);
            if (!os) throw std::runtime_error("failed writing frequencies.csv");
            os.close();
            files.push_back("frequencies.csv");
            manifest["patterns"] = t.counts.size();
            manifest["window_volume"] = t.window_volume;
        } else if (c.command == "ids-comb" || c.command == "ids-quantum" ||
                   c.command == "ids-lengths") {
            IdsCurve curve = finite_volume_ids(c.model, c.seed, c.side, c.window);
            std::string name = "curve-M" + std::to_string(c.side) + ".csv";
            write_curve(dir / name, curve.curve);
            files.push_back(name);
        } else if (c.command == "converge") {
            ConvergenceReport rep =
                convergence_report(c.model, c.sides, c.seed, c.window, c.weighted);
            for (int m : c.sides) {
                IdsCurve curve = finite_volume_ids(c.model, c.seed, m, c.window);
                std::string name = "curve-M" + std::to_string(m) + ".csv";
                write_curve(dir / name, curve.curve);
                files.push_back(name);
            }
            std::ofstream os(dir / "report.csv");
            os << "side,sup_distance,weighted_distance\n";
            json distances = json::array();
            for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
                const ConvergenceRow& r = rep.rows[i];
                os << r.side << ',' << fmt17(r.sup_distance) << ','
                   << fmt17(r.weighted_distance) << '\n';
                distances.push_back({{"side", r.side},
                                     {"sup_distance", r.sup_distance},
                                     {"weighted_distance", r.weighted_distance}});
            }
            if (!os) throw std::runtime_error("failed writing report.csv");
            os.close();
            files.push_back("report.csv");
            manifest["distances"] = distances;
            manifest["reference_side"] = rep.reference_side;
        } else if (c.command == "jumps") {
            IdsCurve curve = finite_volume_ids(c.model, c.seed, c.side, c.window);
            std::string name = "curve-M" + std::to_string(c.side) + ".csv";
            write_curve(dir / name, curve.curve);
            files.push_back(name);
            JumpList jl = detect_jumps(curve, c.min_jump);
            std::ofstream os(dir / "jumps.csv");
            os << "location,height\n";
            json jj = json::array();
            for (const Jump& j : jl) {
                os << fmt17(j.location) << ',' << fmt17(j.height) << '\n';
                jj.push_back({{"location", j.location}, {"height", j.height}});
            }
            if (!os) throw std::runtime_error("failed writing jumps.csv");
            os.close();
            files.push_back("jumps.csv");
            manifest["jumps"] = jj;
        } else if (c.command == "shubin") {
            IdsCurve curve = shubin_pastur_mc(c.model, c.cell_side, c.buffer_radius, c.samples,
                                              c.seed, c.window);
            std::string name = "curve-M" + std::to_string(c.cell_side) + ".csv";
            write_curve(dir / name, curve.curve);
            files.push_back(name);
        }

        json flist = json::array();
        for (const std::string& f : files) {
            fs::path p = dir / f;
            flist.push_back({{"name", f},
                             {"sha256", sha256_hex(p)},
                             {"bytes", static_cast<std::uint64_t>(fs::file_size(p))}});
        }
        manifest["files"] = flist;
        manifest["wall_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ofstream ms(dir / "manifest.json");
        ms << manifest.dump(2) << '\n';
        if (!ms) throw std::runtime_error("failed writing manifest.json");
    } catch (...) {
        std::error_code ec;
        fs::remove_all(dir, ec);  // never leave partial outputs behind
        throw;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integrated-density-of-states experiment runner"};
    std::string config_path;
    std::string out_dir = ".";
    std::int64_t seed_override = -1;
    int threads = 1;
    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--out", out_dir, "output root directory");
    app.add_option("--seed", seed_override, "override the config seed");
    app.add_option("--threads", threads, "worker hint (results never depend on it)");
    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig c = parse_config(config_path);
        if (seed_override >= 0) {
            c.seed = static_cast<std::uint64_t>(seed_override);
            c.seed_given = true;
        }
        if (c.model.needs_seed() && !c.seed_given)
            throw ConfigError("seed: required for stochastic models");
        return run(c, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
