// gic: coset indexings, group codecs and desk-scale compression-gap
// experiments for isomorphism problems.
//
// All indices printed or read by the CLI are 0-based. Randomized verbs take
// a required --seed and are byte-reproducible for a fixed seed.

#include "CLI11.hpp"
#include "gic/cost.hpp"
#include "gic/coset.hpp"
#include "gic/flat.hpp"
#include "gic/fq.hpp"
#include "gic/iso.hpp"
#include "gic/perm.hpp"
#include "gic/perm_group.hpp"
#include "gic/reduction.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace gic;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

PermGroup group_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open generator list: " + path);
    return PermGroup::from_text(f);
}

MatrixFq matrix_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open matrix: " + path);
    return MatrixFq::from_text(f);
}

IsoInstance instance_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open instance: " + path);
    return instance_from_text(f);
}

std::string to_hex(const std::string& bytes) {
    static const char* hexd = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (unsigned char c : bytes) {
        out += hexd[c >> 4];
        out += hexd[c & 15];
    }
    return out;
}

std::string from_hex(const std::string& hex) {
    auto val = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::runtime_error("bad hex digit");
    };
    if (hex.size() % 2) throw std::runtime_error("odd-length hex string");
    std::string out;
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out += static_cast<char>((val(hex[i]) << 4) | val(hex[i + 1]));
    return out;
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write: " + path);
    f << content;
}

UniverseElement instance_side(const IsoInstance& inst, int side) {
    if (side != 0 && side != 1) throw std::runtime_error("--side must be 0 or 1");
    return side == 0 ? inst.x0 : inst.x1;
}

int run(int argc, char** argv) {
    CLI::App app{
        "gic: coset indexings, group codecs, and description-cost experiments.\n"
        "All indices are 0-based; points in text formats are 1-based.\n"
        "Formats: permutation = one line of images (\"2 1 3\");\n"
        "  generator list = \"n k\" header + k permutation lines;\n"
        "  matrix = \"rows cols q\" header + row lines of residues;\n"
        "  scheme = \"ell m s count\" header + per hash m ell-bit lines + one offset line;\n"
        "  instance = kind line (graph | linear-code | perm-group-conjugacy |\n"
        "  matrix-subspace) + two payloads separated by a blank line;\n"
        "  experiment config = key=value lines (see README)."};
    app.require_subcommand(1);

    // ---- rank / unrank (cosets of Gamma within H; defaults: H = S_n,
    //      Gamma trivial, i.e. the Lehmer code) ----
    std::string perm_text, h_path, gamma_path, k_text;
    int n = 0;
    auto* rank = app.add_subcommand("rank", "rank of the coset of a permutation");
    rank->add_option("--perm", perm_text, "permutation, e.g. \"2 1 3\"")->required();
    rank->add_option("--group", h_path, "generator list for H (default S_n)");
    rank->add_option("--gamma", gamma_path, "generator list for Gamma (default trivial)");
    rank->callback([&] {
        Perm p = Perm::from_text(perm_text);
        PermGroup h = h_path.empty() ? PermGroup::symmetric(p.degree()) : group_from_file(h_path);
        PermGroup gamma =
            gamma_path.empty() ? PermGroup::trivial(p.degree()) : group_from_file(gamma_path);
        CosetIndexing idx(h, gamma);
        std::cout << idx.rank(p).str() << '\n';
    });

    auto* unrank = app.add_subcommand("unrank", "permutation for a coset index");
    unrank->add_option("--n", n, "degree")->required();
    unrank->add_option("--k", k_text, "index (0-based)")->required();
    unrank->add_option("--group", h_path, "generator list for H (default S_n)");
    unrank->add_option("--gamma", gamma_path, "generator list for Gamma (default trivial)");
    unrank->callback([&] {
        PermGroup h = h_path.empty() ? PermGroup::symmetric(n) : group_from_file(h_path);
        PermGroup gamma = gamma_path.empty() ? PermGroup::trivial(n) : group_from_file(gamma_path);
        CosetIndexing idx(h, gamma);
        std::cout << idx.unrank(BigIndex(k_text)).to_text() << '\n';
    });

    auto* canonical = app.add_subcommand("canonical", "lex-least element of pi * Gamma");
    canonical->add_option("--perm", perm_text, "permutation")->required();
    canonical->add_option("--gamma", gamma_path, "generator list for Gamma")->required();
    canonical->callback([&] {
        Perm p = Perm::from_text(perm_text);
        std::cout << canonical_rep(p, group_from_file(gamma_path)).to_text() << '\n';
    });

    auto* nf = app.add_subcommand("normal-form", "canonical generating list of a subgroup");
    nf->add_option("--gens", gamma_path, "generator list file")->required();
    nf->callback([&] {
        PermGroup g = group_from_file(gamma_path);
        std::vector<Perm> out = normal_form(g);
        std::cout << g.degree() << ' ' << out.size() << '\n';
        for (const Perm& p : out) std::cout << p.to_text() << '\n';
    });

    // ---- GL_n(F_q) ----
    std::uint32_t q = 2;
    std::string matrix_path;
    auto* glorder = app.add_subcommand("gl-order", "|GL_n(F_q)| by the product formula");
    glorder->add_option("--n", n, "dimension")->required();
    glorder->add_option("--q", q, "prime modulus")->required();
    glorder->callback([&] { std::cout << gl_order(n, q).str() << '\n'; });

    auto* glunrank = app.add_subcommand("gl-unrank", "invertible matrix for an index");
    glunrank->add_option("--n", n, "dimension")->required();
    glunrank->add_option("--q", q, "prime modulus")->required();
    glunrank->add_option("--k", k_text, "index (0-based)")->required();
    glunrank->callback([&] { std::cout << gl_unrank(BigIndex(k_text), n, q).to_text(); });

    auto* glrank = app.add_subcommand("gl-rank", "index of an invertible matrix");
    glrank->add_option("--matrix", matrix_path, "matrix file")->required();
    glrank->callback([&] { std::cout << gl_rank(matrix_from_file(matrix_path)).str() << '\n'; });

    auto* rrefcmd = app.add_subcommand("rref", "reduced row echelon form");
    rrefcmd->add_option("--matrix", matrix_path, "matrix file")->required();
    rrefcmd->callback([&] { std::cout << rref(matrix_from_file(matrix_path)).to_text(); });

    // ---- flat encoder ----
    std::string instance_path, scheme_path, out_path, outcome_hex;
    int side = 0;
    double s_bound = 0;
    std::uint64_t seed = 0;
    auto* bscheme = app.add_subcommand(
        "build-scheme", "hash scheme for the isomorphic-copy sampler of an instance side");
    bscheme->add_option("--instance", instance_path, "instance file")->required();
    bscheme->add_option("--side", side, "0 or 1 (default 0)");
    bscheme->add_option("--s", s_bound, "max-entropy bound")->required();
    bscheme->add_option("--seed", seed, "RNG seed")->required();
    bscheme->add_option("--out", out_path, "output file (default stdout)");
    bscheme->callback([&] {
        UniverseElement w = instance_side(instance_from_file(instance_path), side);
        BitSampler sampler = FlatSchemeCodec::orbit_sampler(w);
        Rng rng(seed);
        FlatScheme scheme = build_scheme(sampler, s_bound, rng);
        write_or_print(out_path, scheme.to_text());
    });

    auto* enc = app.add_subcommand("encode", "scheme index of an outcome (hex canonical bytes)");
    enc->add_option("--scheme", scheme_path, "scheme file")->required();
    enc->add_option("--instance", instance_path, "instance file")->required();
    enc->add_option("--side", side, "0 or 1 (default 0)");
    enc->add_option("--outcome-hex", outcome_hex, "outcome as hex bytes")->required();
    enc->callback([&] {
        UniverseElement w = instance_side(instance_from_file(instance_path), side);
        std::ifstream f(scheme_path);
        if (!f) throw std::runtime_error("cannot open scheme: " + scheme_path);
        FlatScheme scheme = FlatScheme::from_text(f);
        BitSampler sampler = FlatSchemeCodec::orbit_sampler(w);
        std::cout << flat_encode(scheme, sampler, from_hex(outcome_hex)).str() << '\n';
    });

    auto* dec = app.add_subcommand("decode", "outcome (hex) for a scheme index");
    dec->add_option("--scheme", scheme_path, "scheme file")->required();
    dec->add_option("--instance", instance_path, "instance file")->required();
    dec->add_option("--side", side, "0 or 1 (default 0)");
    dec->add_option("--k", k_text, "index (0-based)")->required();
    dec->callback([&] {
        UniverseElement w = instance_side(instance_from_file(instance_path), side);
        std::ifstream f(scheme_path);
        if (!f) throw std::runtime_error("cannot open scheme: " + scheme_path);
        FlatScheme scheme = FlatScheme::from_text(f);
        BitSampler sampler = FlatSchemeCodec::orbit_sampler(w);
        std::cout << to_hex(flat_decode(scheme, sampler, BigIndex(k_text))) << '\n';
    });

    // ---- cost oracle ----
    std::string y_path, hints_path;
    std::uint64_t c_machine = 64;
    auto* costcmd = app.add_subcommand("cost", "description cost of a byte string");
    costcmd->add_option("--file", y_path, "file holding y (binary)")->required();
    costcmd->add_option("--hints", hints_path, "description hints file");
    costcmd->add_option("--c-machine", c_machine, "machine surcharge bits (default 64)");
    costcmd->callback([&] {
        std::string y = slurp(y_path);
        std::vector<Description> hints;
        if (!hints_path.empty()) {
            std::ifstream f(hints_path);
            if (!f) throw std::runtime_error("cannot open hints: " + hints_path);
            hints = descriptions_from_text(f);
        }
        CostModel model = CostModel::standard(c_machine);
        std::vector<CostModel::Line> report;
        std::uint64_t c = model.cost(y, hints, &report);
        std::cout << cost_report_lines(report);
        std::cout << "cost " << c << '\n';
    });

    auto* audit = app.add_subcommand("audit", "counting audit of the codec registry");
    std::uint64_t budget_c = 128, ell = 1024;
    audit->add_option("--c", budget_c, "cost budget in bits");
    audit->add_option("--ell", ell, "string length in bits");
    audit->add_option("--c-machine", c_machine, "machine surcharge bits (default 64)");
    audit->callback([&] {
        CostModel model = CostModel::standard(c_machine);
        auto rep = model.counting_audit(budget_c, ell);
        for (const auto& line : rep.lines) std::cout << line << '\n';
        std::cout << (rep.pass ? "audit pass" : "audit FAIL") << '\n';
        if (!rep.pass) throw invariant_violation("counting audit failed");
    });

    // ---- reduction pipeline ----
    int t = 1024, b = 0;
    double s_tilde = -1;
    std::uint64_t budget = 1000000;
    std::string mode_name = "zero-error", hints_out;
    auto* red = app.add_subcommand("reduce", "sample the reduction output (y, theta)");
    red->add_option("--instance", instance_path, "instance file")->required();
    red->add_option("--t", t, "sample count (default 1024)");
    red->add_option("--b", b, "block size (default ceil(sqrt(t)))");
    red->add_option("--s-tilde", s_tilde,
                    "entropy bound; computed by the overestimator when omitted");
    red->add_option("--seed", seed, "RNG seed")->required();
    red->add_option("--hints-out", hints_out, "write isomorphic-side descriptions here");
    red->callback([&] {
        IsoInstance inst = instance_from_file(instance_path);
        Rng master(seed);
        if (s_tilde < 0) {
            Rng r0 = master.fork(1), r1 = master.fork(2);
            double s0 = log_orbit_overestimate(inst.x0, AutStrategy::Exhaustive, r0).value;
            double s1 = log_orbit_overestimate(inst.x1, AutStrategy::Exhaustive, r1).value;
            s_tilde = std::min(s0, s1);
        }
        ReductionOutput out = reduce(inst, t, s_tilde, master.next_u64(), b);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", out.s_tilde);
        std::cout << "s_tilde " << buf << '\n';
        std::snprintf(buf, sizeof buf, "%.6f", out.theta);
        std::cout << "theta " << buf << '\n';
        std::cout << "t " << out.t << "\nb " << out.b << '\n';
        std::cout << "y " << to_hex(out.y) << '\n';
        if (!hints_out.empty()) {
            Rng rng_hint = master.fork(3);
            HintBundle hints =
                hint_for_isomorphic(out, inst, std::nullopt, out.b, AutStrategy::Exhaustive,
                                    rng_hint, budget);
            if (!hints.ok) throw std::runtime_error("hint construction failed: " + hints.note);
            write_or_print(hints_out, descriptions_to_text(hints.hints));
        }
    });

    auto* deccmd = app.add_subcommand("decide", "zero-error isomorphism decision");
    deccmd->add_option("--instance", instance_path, "instance file")->required();
    deccmd->add_option("--mode", mode_name,
                       "no-false-negatives | no-false-positives | zero-error (default)");
    deccmd->add_option("--t", t, "sample count (default 1024)");
    deccmd->add_option("--b", b, "block size (default ceil(sqrt(t)))");
    deccmd->add_option("--budget", budget, "witness search budget (default 1e6)");
    deccmd->add_option("--c-machine", c_machine, "machine surcharge bits (default 64)");
    deccmd->add_option("--seed", seed, "RNG seed")->required();
    deccmd->callback([&] {
        IsoInstance inst = instance_from_file(instance_path);
        DecideResult r = decide(inst, decide_mode_from_name(mode_name), budget, seed, t, b,
                                c_machine);
        std::cout << verdict_name(r.verdict) << '\n';
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", r.theta);
        std::cerr << "theta " << buf << " cost " << r.cost << (r.note.empty() ? "" : " # " + r.note)
                  << '\n';
    });

    std::string config_path;
    auto* exp = app.add_subcommand("experiment", "sweep decide() over instances x t x seeds");
    exp->add_option("--config", config_path, "key=value config file")->required();
    exp->callback([&] {
        std::ifstream f(config_path);
        if (!f) throw std::runtime_error("cannot open config: " + config_path);
        std::string base = std::filesystem::path(config_path).parent_path().string();
        ExperimentConfig cfg = parse_experiment_config(f, base);
        ExperimentResult res = run_experiment(cfg);
        if (cfg.out.empty())
            std::cout << res.csv;
        else
            write_or_print(cfg.out, res.csv);
        if (res.invariant_violated)
            throw invariant_violation("a verdict contradicted brute-force truth");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gic::invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
