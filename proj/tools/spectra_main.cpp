#include "spectra/checks.hpp"
#include "spectra/quantum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace spectra;
using ordered_json = nlohmann::ordered_json;

namespace {

int thread_cap() {
    if (const char* s = std::getenv("SPECTRA_THREADS")) {
        int v = std::atoi(s);
        if (v >= 1) return v;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? int(h) : 1;
}

// corpus convention: the torsion bias cycles with the seed
RandomParams corpus_params(std::uint64_t seed) {
    RandomParams p;
    p.torsion_bias = double(seed % 5) / 5.0;
    return p;
}

Level parse_level(const std::string& s) {
    if (s == "inf") return Level::full();
    return Level::at(parse_rational(s));
}

std::string group_str(const NormalForm& nf) {
    std::vector<std::string> parts;
    if (nf.rank == 1)
        parts.push_back("Z");
    else if (nf.rank > 1)
        parts.push_back("Z^" + std::to_string(nf.rank));
    for (const mpz_class& d : nf.invariants) parts.push_back("Z/" + d.get_str());
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

std::string homology_str(const Analyzer& an, const Ring& ring, int degree, int idx) {
    const Presentation& P = an.homology(ring, degree, idx);
    if (ring.kind == RingKind::Q) {
        int d = q_rank(P);
        return d == 0 ? "0" : d == 1 ? "Q" : "Q^" + std::to_string(d);
    }
    return group_str(normal_form(P.group));
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// "v=1,w=-2" -> cycle chain -> homology class at the requested level
HomologyClass resolve_class(const Analyzer& an, const Ring& ring, std::optional<int> degree_flag,
                            const Level& level, const std::string& expr) {
    const FilteredComplex& C = an.complex();
    std::vector<mpq_class> chain(C.generators.size(), 0);
    int degree = -1;
    size_t pos = 0;
    bool any = false;
    while (pos <= expr.size()) {
        size_t comma = expr.find(',', pos);
        std::string item = trim(expr.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos));
        pos = comma == std::string::npos ? expr.size() + 1 : comma + 1;
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("class term '" + item + "' is not id=value");
        std::string id = trim(item.substr(0, eq));
        int g = C.find(id);
        if (g < 0) throw std::invalid_argument("unknown generator id '" + id + "'");
        if (degree == -1)
            degree = C.generators[g].degree;
        else if (degree != C.generators[g].degree)
            throw std::invalid_argument("class mixes degrees " + std::to_string(degree) + " and " +
                                        std::to_string(C.generators[g].degree));
        chain[size_t(g)] += parse_rational(trim(item.substr(eq + 1)));
        any = true;
    }
    if (!any) throw std::invalid_argument("empty class selector");
    if (degree_flag && *degree_flag != degree)
        throw std::invalid_argument("--degree " + std::to_string(*degree_flag) +
                                    " does not match the selector's degree " +
                                    std::to_string(degree));

    int idx = an.level_index(level);
    for (size_t g = 0; g < chain.size(); ++g)
        if (chain[g] != 0 && level.tau && C.generators[g].action > *level.tau)
            throw std::invalid_argument("generator '" + C.generators[g].id +
                                        "' lies above the requested level");
    auto cls = class_of_chain(an, ring, degree, idx, chain);
    if (!cls) {
        // show d(chain) so the caller can see why it is not a cycle
        std::map<int, mpq_class> d;
        for (size_t g = 0; g < chain.size(); ++g)
            if (chain[g] != 0)
                for (const auto& [tgt, coef] : C.boundary[g]) d[tgt] += chain[g] * coef;
        std::string bd;
        for (const auto& [tgt, v] : d) {
            mpq_class w = v;
            if (ring.kind == RingKind::Zmod) w = mod_reduce(mpz_class(w), ring.modulus);
            if (w == 0) continue;
            if (!bd.empty()) bd += ", ";
            bd += C.generators[size_t(tgt)].id + "=" + w.get_str();
        }
        throw std::invalid_argument("not a cycle over " + ring.str() + ": d(chain) = {" + bd + "}");
    }
    return *cls;
}

struct Output {
    bool json = false;
    std::string path;  // empty = stdout

    void emit(const std::string& table, const ordered_json& j) const {
        std::string text = json ? j.dump(2) + "\n" : table;
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot write " + path);
            f << text;
        }
    }
};

ordered_json details_json(const CheckReport& r) {
    ordered_json v = ordered_json::object();
    for (const auto& [k, val] : r.details) v[k] = val;
    return v;
}

ordered_json report_json(const CheckReport& r, const ordered_json& inputs) {
    ordered_json j;
    j["check"] = r.check;
    j["inputs"] = inputs;
    j["status"] = r.status;
    j["witness"] = ordered_json::object();
    if (!r.note.empty()) j["witness"]["note"] = r.note;
    j["values"] = details_json(r);
    return j;
}

// ---- command implementations --------------------------------------------

int cmd_validate(const std::vector<std::string>& files, const Output& out) {
    std::string table;
    ordered_json arr = ordered_json::array();
    bool bad = false;
    for (const std::string& f : files) {
        FilteredComplex C = load_complex(f);
        std::vector<std::string> viol = validate(C);
        ordered_json j;
        j["command"] = "validate";
        j["inputs"] = {{"complex", f}};
        j["status"] = viol.empty() ? "ok" : "invalid";
        j["values"] = {{"violations", viol}};
        arr.push_back(j);
        if (viol.empty()) {
            table += files.size() > 1 ? f + ": ok\n" : "ok\n";
        } else {
            bad = true;
            table += f + ": invalid\n";
            for (const std::string& v : viol) table += "  " + v + "\n";
        }
    }
    out.emit(table, arr.size() == 1 ? arr[0] : arr);
    return bad ? 2 : 0;
}

int cmd_homology(const std::string& file, const Ring& ring, std::optional<int> degree,
                 const std::string& level_str, const Output& out) {
    Analyzer an(load_complex(file));
    int idx = an.level_index(parse_level(level_str));
    int lo = degree ? *degree : 0;
    int hi = degree ? *degree : an.complex().top_degree;
    std::string table;
    ordered_json vals = ordered_json::object();
    for (int d = lo; d <= hi; ++d) {
        std::string g = idx < 0 ? "0" : homology_str(an, ring, d, idx);
        table += "degree " + std::to_string(d) + ": " + g + "\n";
        vals[std::to_string(d)] = g;
    }
    ordered_json j;
    j["command"] = "homology";
    j["inputs"] = {{"complex", file}, {"ring", ring.str()}, {"level", level_str}};
    j["values"] = vals;
    out.emit(table, j);
    return 0;
}

int cmd_spectral(const std::string& file, const Ring& ring, std::optional<int> degree,
                 const std::string& cls, const Output& out) {
    Analyzer an(load_complex(file));
    HomologyClass a = resolve_class(an, ring, degree, Level::full(), cls);
    SpectralValue c = spectral_invariant(an, a);
    ordered_json j;
    j["command"] = "spectral";
    j["inputs"] = {{"complex", file}, {"ring", ring.str()}, {"class", cls}};
    j["values"] = {{"c", c.str()}};
    out.emit("c = " + c.str() + "\n", j);
    return 0;
}

int cmd_depth(const std::string& file, std::optional<int> degree, const std::string& cls,
              const Output& out) {
    Analyzer an(load_complex(file));
    ordered_json j;
    j["command"] = "depth";
    if (!cls.empty()) {
        // spectral depth of one integral class
        HomologyClass a = resolve_class(an, ring_Z(), degree, Level::full(), cls);
        DepthReport r = spectral_depth(an, a);
        std::string table = "c_Z = " + r.c_z.str() + "\nc_Q = " + r.c_q.str() +
                            "\nbeta_spec = " + r.beta.str() + "\nwitness k = " +
                            r.witness.get_str() + "\n";
        j["inputs"] = {{"complex", file}, {"ring", "Z"}, {"class", cls}};
        j["values"] = {{"c_Z", r.c_z.str()},
                       {"c_Q", r.c_q.str()},
                       {"beta_spec", r.beta.str()},
                       {"witness", r.witness.get_str()},
                       {"lcm_bound", r.lcm_bound.get_str()}};
        out.emit(table, j);
        return 0;
    }
    // no class: torsion depth, per degree and overall
    std::string table;
    ordered_json by = ordered_json::object();
    for (const auto& [d, b] : torsion_depth_all(an)) {
        if (degree && *degree != d) continue;
        table += "degree " + std::to_string(d) + ": " + b.str() + "\n";
        by[std::to_string(d)] = b.str();
    }
    SpectralValue total = degree ? torsion_depth(an, *degree) : torsion_depth(an);
    table += "beta_tor = " + total.str() + "\n";
    j["inputs"] = {{"complex", file}};
    j["values"] = {{"by_degree", by}, {"beta_tor", total.str()}};
    out.emit(table, j);
    return 0;
}

int cmd_dual(const std::string& file, const Output& out) {
    FilteredComplex D = dual_complex(load_complex(file));
    std::string text = save_complex(D);
    out.emit(text, ordered_json::parse(text));
    return 0;
}

int cmd_gamma(const std::string& file, const Ring& ring, const std::string& cls,
              const std::string& dual_cls, const Output& out) {
    FilteredComplex C = load_complex(file);
    Analyzer an(C), dn(dual_complex(C));
    HomologyClass a = resolve_class(an, ring, std::nullopt, Level::full(), cls);
    HomologyClass b = resolve_class(dn, ring, std::nullopt, Level::full(), dual_cls);
    SpectralValue c1 = spectral_invariant(an, a), c2 = spectral_invariant(dn, b);
    SpectralValue g = spectral_norm(an, dn, a, b);
    std::string table = "c = " + c1.str() + "\nc_dual = " + c2.str() + "\ngamma = " + g.str() + "\n";
    ordered_json j;
    j["command"] = "gamma";
    j["inputs"] = {
        {"complex", file}, {"ring", ring.str()}, {"class", cls}, {"dual_class", dual_cls}};
    j["values"] = {{"c", c1.str()}, {"c_dual", c2.str()}, {"gamma", g.str()}};
    out.emit(table, j);
    return 0;
}

struct CheckUnit {
    ordered_json inputs;
    std::string label;
    FilteredComplex C;
    std::uint64_t lipschitz_seed = 0;
};

int cmd_check(const std::string& which, const std::vector<std::string>& files,
              std::optional<std::uint64_t> seed, const std::string& gen_seeds, const Output& out) {
    std::vector<CheckUnit> units;
    for (const std::string& f : files)
        units.push_back({{{"complex", f}}, f, load_complex(f), 0});
    auto add_seed = [&](std::uint64_t s) {
        units.push_back(
            {{{"seed", s}}, "seed=" + std::to_string(s), random_complex(s, corpus_params(s)), s});
    };
    if (seed) add_seed(*seed);
    if (!gen_seeds.empty()) {
        size_t dots = gen_seeds.find("..");
        if (dots == std::string::npos)
            throw std::invalid_argument("--gen-seeds wants a..b, got '" + gen_seeds + "'");
        long a = std::stol(gen_seeds.substr(0, dots));
        long b = std::stol(gen_seeds.substr(dots + 2));
        if (a < 0 || b < a) throw std::invalid_argument("bad seed range " + gen_seeds);
        for (long s = a; s <= b; ++s) add_seed(std::uint64_t(s));
    }
    if (units.empty()) throw std::invalid_argument("check needs input files or --gen-seeds");

    // one result slot per unit keeps the output ordered however threads finish
    std::vector<std::vector<CheckReport>> results(units.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < units.size(); i = next.fetch_add(1))
            results[i] = run_standard_checks(units[i].C, units[i].lipschitz_seed);
    };
    int nthreads = std::min<int>(thread_cap(), int(units.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::string table;
    ordered_json arr = ordered_json::array();
    bool failed = false;
    for (size_t i = 0; i < units.size(); ++i) {
        std::vector<CheckReport> reports;
        for (CheckReport& r : results[i])
            if (which == "all" || r.check == which) reports.push_back(std::move(r));
        int nfail = 0, npass = 0, ninc = 0;
        for (const CheckReport& r : reports)
            (r.status == "fail" ? nfail : r.status == "pass" ? npass : ninc)++;
        std::string status = nfail ? "fail" : npass ? "pass" : "inconclusive";
        failed = failed || nfail;

        ordered_json rec;
        rec["check"] = which;
        rec["inputs"] = units[i].inputs;
        rec["status"] = status;
        rec["witness"] = ordered_json::object();
        for (const CheckReport& r : reports)
            if (r.status == "fail") {
                rec["witness"] = {{"check", r.check}, {"note", r.note}};
                rec["witness"]["values"] = details_json(r);
                break;
            }
        rec["values"] = {{"checks", std::to_string(reports.size())},
                         {"failed", std::to_string(nfail)},
                         {"inconclusive", std::to_string(ninc)}};
        ordered_json sub = ordered_json::array();
        for (const CheckReport& r : reports) sub.push_back(report_json(r, units[i].inputs));
        rec["reports"] = sub;
        arr.push_back(rec);

        table += units[i].label + " " + which + ": " + status + " (" +
                 std::to_string(reports.size()) + " checks, " + std::to_string(nfail) +
                 " failed, " + std::to_string(ninc) + " inconclusive)\n";
        for (const CheckReport& r : reports)
            if (r.status == "fail") {
                table += "  FAIL " + r.check + ": " + r.note + "\n";
                for (const auto& [k, v] : r.details) table += "    " + k + " = " + v + "\n";
            }
    }
    out.emit(table, arr);
    return failed ? 1 : 0;
}

int cmd_gen(std::uint64_t seed, std::optional<double> bias, int max_degree, int gens, long span,
            const Output& out) {
    RandomParams p = corpus_params(seed);
    if (bias) p.torsion_bias = *bias;
    p.max_degree = max_degree;
    p.gens_per_degree = gens;
    p.action_span = span;
    std::string text = save_complex(random_complex(seed, p));
    out.emit(text, ordered_json::parse(text));
    return 0;
}

int cmd_qring(int n, const Ring& ring, const std::string& expr, const std::string& with,
              bool inverse, const Output& out) {
    QuantumClass a = parse_quantum(n, ring, expr);
    std::string table = "value = " + quantum_str(a) + "\n";
    ordered_json vals;
    vals["value"] = quantum_str(a);
    table += "tau = " + rational_str(qtau(a)) + "\n";
    vals["tau"] = rational_str(qtau(a));
    auto deg = qdegree(a);
    std::string deg_s = deg ? std::to_string(*deg) : "mixed";
    table += "degree = " + deg_s + "\n";
    vals["degree"] = deg_s;
    std::string val_s = a.coeff.empty() ? "-" : std::to_string(qvaluation(a));
    table += "valuation = " + val_s + "\n";
    vals["valuation"] = val_s;
    if (!with.empty()) {
        QuantumClass b = parse_quantum(n, ring, with);
        table += "product = " + quantum_str(qmul(a, b)) + "\n";
        vals["product"] = quantum_str(qmul(a, b));
        table += "pairing = " + rational_str(qpairing(a, b)) + "\n";
        vals["pairing"] = rational_str(qpairing(a, b));
    }
    if (inverse) {
        QuantumClass inv = qinverse(a);
        table += "inverse = " + quantum_str(inv) + "\n";
        vals["inverse"] = quantum_str(inv);
    }
    ordered_json j;
    j["command"] = "qring";
    j["inputs"] = {{"n", n}, {"ring", ring.str()}, {"expr", expr}};
    if (!with.empty()) j["inputs"]["with"] = with;
    j["values"] = vals;
    out.emit(table, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectral invariants of action-filtered chain complexes"};
    app.require_subcommand(1);

    Output out;
    std::string ring_str = "Z", level_str = "inf", cls, dual_cls, gen_seeds, qexpr, qwith;
    std::vector<std::string> files;
    std::optional<int> degree;
    std::optional<std::uint64_t> seed;
    std::optional<double> bias;
    std::uint64_t gen_seed = 0;
    int qn = 1, max_degree = 2, gens = 3;
    long span = 8;
    bool qinv = false;
    std::string check_which;

    auto add_common = [&](CLI::App* c) {
        c->add_flag("--json", out.json, "emit a JSON report instead of a table");
        c->add_option("--out", out.path, "write the report to a file");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a complex file");
    validate_cmd->add_option("files", files, "complex files")->required()->expected(-1);
    add_common(validate_cmd);

    CLI::App* homology_cmd = app.add_subcommand("homology", "homology of a sublevel");
    homology_cmd->add_option("file", files, "complex file")->required()->expected(1);
    homology_cmd->add_option("--ring", ring_str, "Z, Q or Z/m");
    homology_cmd->add_option("--degree", degree, "restrict to one degree");
    homology_cmd->add_option("--level", level_str, "sublevel cutoff p/q, or inf");
    add_common(homology_cmd);

    CLI::App* spectral_cmd = app.add_subcommand("spectral", "spectral invariant of a class");
    spectral_cmd->add_option("file", files, "complex file")->required()->expected(1);
    spectral_cmd->add_option("--ring", ring_str, "Z, Q or Z/m");
    spectral_cmd->add_option("--degree", degree, "degree of the class");
    spectral_cmd->add_option("--class", cls, "cycle, e.g. v=1 or x=1,w=-2")->required();
    add_common(spectral_cmd);

    CLI::App* depth_cmd = app.add_subcommand(
        "depth", "spectral depth of a class (--class) or torsion depth of the complex");
    depth_cmd->add_option("file", files, "complex file")->required()->expected(1);
    depth_cmd->add_option("--degree", degree, "restrict to one degree");
    depth_cmd->add_option("--class", cls, "integral cycle, e.g. v=1");
    add_common(depth_cmd);

    CLI::App* dual_cmd = app.add_subcommand("dual", "emit the dual complex");
    dual_cmd->add_option("file", files, "complex file")->required()->expected(1);
    add_common(dual_cmd);

    CLI::App* gamma_cmd = app.add_subcommand("gamma", "spectral norm of a dual pair of classes");
    gamma_cmd->add_option("file", files, "complex file")->required()->expected(1);
    gamma_cmd->add_option("--ring", ring_str, "Z, Q or Z/m");
    gamma_cmd->add_option("--class", cls, "cycle on the complex")->required();
    gamma_cmd->add_option("--dual-class", dual_cls, "cycle on the dual complex")->required();
    add_common(gamma_cmd);

    CLI::App* check_cmd = app.add_subcommand("check", "verify theorem suites");
    check_cmd
        ->add_option("which", check_which,
                     "coeff-mono, zq, pd-field, pd-z, primes, refine, depth-id, lipschitz or all")
        ->required()
        ->check(CLI::IsMember({"coeff-mono", "zq", "pd-field", "pd-z", "primes", "refine",
                               "depth-id", "lipschitz", "all"}));
    check_cmd->add_option("files", files, "complex files")->expected(-1);
    check_cmd->add_option("--seed", seed, "one generated complex");
    check_cmd->add_option("--gen-seeds", gen_seeds, "seed range a..b of generated complexes");
    add_common(check_cmd);

    CLI::App* gen_cmd = app.add_subcommand("gen", "emit a seeded random complex");
    gen_cmd->add_option("--seed", gen_seed, "generator seed")->required();
    gen_cmd->add_option("--torsion-bias", bias, "override the seed-determined torsion bias");
    gen_cmd->add_option("--max-degree", max_degree, "top generator degree");
    gen_cmd->add_option("--gens-per-degree", gens, "generators per degree");
    gen_cmd->add_option("--action-span", span, "action range");
    add_common(gen_cmd);

    CLI::App* qring_cmd = app.add_subcommand("qring", "quantum ring arithmetic");
    qring_cmd->add_option("expr", qexpr, "element, e.g. \"x^2*t^-1 + 3\"")->required();
    qring_cmd->add_option("--n", qn, "complex projective dimension n >= 1")->required();
    qring_cmd->add_option("--ring", ring_str, "Z, Q or Z/m");
    qring_cmd->add_option("--with", qwith, "second element: also print product and pairing");
    qring_cmd->add_flag("--inverse", qinv, "also print the inverse (fields only)");
    add_common(qring_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto ring = parse_ring(ring_str);
        if (!ring) {
            std::cerr << "error: bad ring '" << ring_str << "'\n";
            return 2;
        }
        if (validate_cmd->parsed()) return cmd_validate(files, out);
        if (homology_cmd->parsed())
            return cmd_homology(files[0], *ring, degree, level_str, out);
        if (spectral_cmd->parsed()) return cmd_spectral(files[0], *ring, degree, cls, out);
        if (depth_cmd->parsed()) return cmd_depth(files[0], degree, cls, out);
        if (dual_cmd->parsed()) return cmd_dual(files[0], out);
        if (gamma_cmd->parsed()) return cmd_gamma(files[0], *ring, cls, dual_cls, out);
        if (check_cmd->parsed()) return cmd_check(check_which, files, seed, gen_seeds, out);
        if (gen_cmd->parsed()) return cmd_gen(gen_seed, bias, max_degree, gens, span, out);
        if (qring_cmd->parsed()) return cmd_qring(qn, *ring, qexpr, qwith, qinv, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
