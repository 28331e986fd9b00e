#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "edga/certificate.hpp"
#include "edga/oracle.hpp"

using namespace edga;
using nlohmann::json;

namespace {

struct CommandOutput {
    int exit_code = 0;
    std::string text;
};

struct PropertyLine {
    std::string name;
    bool pass = true;
    std::string detail;
};

std::pair<int64_t, int64_t> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const int64_t k = std::stoll(s);
        return {k, k};
    }
    const int64_t lo = std::stoll(s.substr(0, dots));
    const int64_t hi = std::stoll(s.substr(dots + 2));
    if (lo > hi) throw config_error("empty range: " + s);
    return {lo, hi};
}

std::string context_line(const Context& c) {
    std::ostringstream os;
    os << "context: p=" << c.p << " precision=" << c.precision << " length=" << c.length
       << " unit=" << c.unit
       << (c.mode == ScalarMode::Exact ? " scalars=exact" : " scalars=normalized");
    return os.str();
}

CommandOutput render_properties(const RunConfig& cfg, const Context& ctx,
                                const std::string& command, const json& inputs,
                                const std::vector<PropertyLine>& lines,
                                const json& witness_checks) {
    bool all = true;
    for (const PropertyLine& l : lines) all = all && l.pass;
    if (cfg.format == OutputFormat::Json) {
        json results = json::array();
        for (const PropertyLine& l : lines)
            results.push_back({{"property", l.name},
                               {"pass", l.pass},
                               {"seed", cfg.seed},
                               {"detail", l.detail}});
        json cert = {{"version", kVersion},      {"command", command},
                     {"context", context_json(ctx)}, {"inputs", inputs},
                     {"results", results},       {"witness_checks", witness_checks}};
        return {all ? 0 : 1, cert.dump(2) + "\n"};
    }
    std::ostringstream os;
    os << context_line(ctx) << "\n";
    for (const PropertyLine& l : lines) {
        os << (l.pass ? "PASS  " : "FAIL  ") << l.name;
        if (!l.detail.empty()) os << "  (" << l.detail << ")";
        os << "\n";
    }
    return {all ? 0 : 1, os.str()};
}

CommandOutput run_verify(const RunConfig& cfg, int64_t k_lo, int64_t k_hi, uint32_t samples) {
    const Context ctx = cfg.make_context();
    std::vector<PropertyLine> lines;
    json checks = json::array();
    std::mt19937_64 rng(cfg.seed);

    {
        uint64_t worst = 0;
        int64_t bad_k = 0;
        for (int64_t k = k_lo; k <= k_hi; ++k) {
            const DdReport r = verify_dd(ctx, k, samples, cfg.seed);
            checks.push_back({{"degree", (2 * (int64_t)ctx.p - 2) * k},
                              {"residue_zero", r.pass}});
            if (r.max_residue > worst) {
                worst = r.max_residue;
                bad_k = k;
            }
        }
        std::ostringstream d;
        d << "k = " << k_lo << ".." << k_hi << ", " << samples << " samples per degree, seed "
          << cfg.seed;
        if (worst != 0) d << "; max residue " << worst << " at window " << bad_k;
        lines.push_back({"cochain identity d.d = 0", worst == 0, d.str()});
    }

    {
        uint32_t probes = 0, failures = 0;
        const uint32_t limit = std::min(ctx.length - ctx.trusted_margin() - 2, 16u);
        for (int64_t k = k_lo; k <= k_hi; ++k) {
            for (int offset = -1; offset <= 1; ++offset) {
                for (uint32_t i = 0; i < samples / 10 + 1; ++i) {
                    const int64_t degree = (2 * (int64_t)ctx.p - 2) * k + offset;
                    const Cochain z = random_cochain(ctx, degree, rng, limit);
                    ++probes;
                    if (!boundary_witness(differential(z)).found()) ++failures;
                }
            }
        }
        lines.push_back({"boundary witnesses validate", failures == 0,
                         std::to_string(probes) + " probes"});
    }

    {
        uint32_t cycles = 0, violations = 0;
        for (int64_t k : {int64_t(1), int64_t(ctx.p)}) {
            const uint32_t nu1 = ctx.twist_val(k);
            for (uint32_t i = 0; i < samples; ++i) {
                const Cochain x = random_even_cycle(ctx, k, rng, 16, rng() % ctx.modulus);
                ++cycles;
                for (uint32_t m = 0; m < ctx.length; ++m)
                    if (x.seqs[1].coeffs[m] % ctx.pow_p(nu1) != 0) ++violations;
            }
        }
        lines.push_back({"even-degree cycle divisibility", violations == 0,
                         std::to_string(cycles) + " sampled cycles"});
    }

    {
        uint32_t pairs = 0, failures = 0;
        std::uniform_int_distribution<uint64_t> coeff(0, ctx.modulus - 1);
        for (int64_t k : {int64_t(0), int64_t(1), int64_t(2)}) {
            for (uint32_t i = 0; i < 50; ++i) {
                ThetaSeq a(ctx, k), b(ctx, -k);
                for (uint32_t m = 0; m < 3; ++m) {
                    a.coeffs[m] = coeff(rng);
                    b.coeffs[m] = coeff(rng);
                }
                ++pairs;
                const ThetaSeq prod = seq_product(a, b);
                if (prod.coeffs[0] != ctx.mul(a.coeffs[0], b.coeffs[0])) ++failures;
            }
        }
        lines.push_back({"index-zero multiplicativity", failures == 0,
                         std::to_string(pairs) + " pairs"});
    }

    {
        const Context reduced(ctx.p, 2, 0, ctx.unit, ctx.mode);
        uint32_t targets = 0, bad = 0;
        for (int64_t k : {int64_t(0), int64_t(1), int64_t(-1)}) {
            const AgreementReport r = oracle_agreement(reduced, 48, k, samples, cfg.seed);
            targets += r.samples;
            bad += r.disagreements + r.witness_failures;
        }
        lines.push_back({"reduced-model solver agreement", bad == 0,
                         std::to_string(targets) + " targets at precision 2"});
    }

    json inputs = {{"k_min", k_lo}, {"k_max", k_hi}, {"samples", samples}, {"seed", cfg.seed}};
    return render_properties(cfg, ctx, "verify", inputs, lines, checks);
}

CommandOutput run_table(const RunConfig& cfg, int64_t from, int64_t to) {
    const Context ctx = cfg.make_context();
    if (from > to) throw config_error("empty degree range");
    for (int64_t n = from; n <= to; ++n) homology_group(ctx, n);  // precision pre-check

    struct Row {
        int64_t n, k;
        std::string group;
        bool certified;
    };
    std::vector<Row> rows;
    bool all = true;
    for (int64_t n = from; n <= to; ++n) {
        const WindowShape s = window_shape(ctx, n);
        const CertReport cert = certify_degree(ctx, n, 6, cfg.seed);
        rows.push_back({n, s.k, cert.group.str(ctx.p), cert.passed});
        all = all && cert.passed;
    }

    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "degree,window,group,certified\n";
        for (const Row& r : rows)
            os << r.n << "," << r.k << "," << r.group << "," << (r.certified ? "yes" : "no")
               << "\n";
        return {all ? 0 : 1, os.str()};
    }
    if (cfg.format == OutputFormat::Json) {
        json results = json::array();
        for (const Row& r : rows)
            results.push_back({{"degree", r.n},
                               {"window", r.k},
                               {"group", r.group},
                               {"certified", r.certified}});
        json cert = {{"version", kVersion},
                     {"command", "table"},
                     {"context", context_json(ctx)},
                     {"inputs", {{"from", from}, {"to", to}}},
                     {"results", results},
                     {"witness_checks", json::array()}};
        return {all ? 0 : 1, cert.dump(2) + "\n"};
    }
    std::ostringstream os;
    os << context_line(ctx) << "\n";
    os << "degree  window  group      certified\n";
    for (const Row& r : rows) {
        os << r.n;
        for (size_t i = std::to_string(r.n).size(); i < 8; ++i) os << ' ';
        os << r.k;
        for (size_t i = std::to_string(r.k).size(); i < 8; ++i) os << ' ';
        os << r.group;
        for (size_t i = r.group.size(); i < 11; ++i) os << ' ';
        os << (r.certified ? "yes" : "NO") << "\n";
    }
    return {all ? 0 : 1, os.str()};
}

CommandOutput run_homology(const RunConfig& cfg, int64_t n) {
    const Context ctx = cfg.make_context();
    const GroupDescriptor g = homology_group(ctx, n);
    const CertReport cert = certify_degree(ctx, n, 16, cfg.seed);
    const WindowShape s = window_shape(ctx, n);

    if (cfg.format == OutputFormat::Json) {
        json result = {{"degree", n},
                       {"window", s.k},
                       {"group", g.str(ctx.p)},
                       {"certified", cert.passed},
                       {"probes", cert.probes},
                       {"detail", cert.detail}};
        json cert_json = {{"version", kVersion},
                          {"command", "homology"},
                          {"context", context_json(ctx)},
                          {"inputs", {{"n", n}}},
                          {"results", json::array({result})},
                          {"witness_checks", json::array()}};
        return {cert.passed ? 0 : 1, cert_json.dump(2) + "\n"};
    }
    std::ostringstream os;
    os << context_line(ctx) << "\n";
    os << "H^" << n << " = " << g.str(ctx.p) << "  (window " << s.k << ", "
       << (cert.passed ? "certified" : "CERTIFICATION FAILED: " + cert.detail) << ")\n";
    return {cert.passed ? 0 : 1, os.str()};
}

CommandOutput run_product(const RunConfig& cfg, int64_t k, uint64_t a, uint64_t b) {
    const Context ctx = cfg.make_context();
    if (k == 0) throw config_error("product: k must be nonzero");
    const int64_t period = 2 * (int64_t)ctx.p - 2;
    const uint32_t nu1 = ctx.twist_val(k);
    if (nu1 >= ctx.precision) throw config_error("product: torsion exceeds the precision");

    HomologyClass alpha, beta;
    alpha.degree = 1 - period * k;
    alpha.kind = HomologyClass::Kind::Torsion;
    alpha.torsion_exponent = nu1;
    alpha.torsion_value = a % ctx.pow_p(nu1);
    beta.degree = period * k + 1;
    beta.kind = HomologyClass::Kind::Torsion;
    beta.torsion_exponent = nu1;
    beta.torsion_value = b % ctx.pow_p(nu1);
    const HomologyClass prod = cohomology_product(ctx, alpha, beta);

    if (cfg.format == OutputFormat::Json) {
        json result = {{"k", k},
                       {"a", alpha.torsion_value},
                       {"b", beta.torsion_value},
                       {"value", prod.str(ctx)},
                       {"numerator", prod.q_num},
                       {"exponent", prod.q_exp},
                       {"nonzero", !prod.is_zero_class()}};
        json cert = {{"version", kVersion},
                     {"command", "product"},
                     {"context", context_json(ctx)},
                     {"inputs", {{"k", k}, {"a", a}, {"b", b}}},
                     {"results", json::array({result})},
                     {"witness_checks", json::array()}};
        return {0, cert.dump(2) + "\n"};
    }
    std::ostringstream os;
    os << context_line(ctx) << "\n";
    os << "H^" << alpha.degree << " x H^" << beta.degree << " -> H^2:  " << alpha.torsion_value
       << " * " << beta.torsion_value << " = " << prod.str(ctx) << " in Q/Z_(" << ctx.p << ")\n";
    return {0, os.str()};
}

CommandOutput run_massey(const RunConfig& cfg, int64_t i, int64_t j, const std::string& mode) {
    const Context ctx = cfg.make_context();
    if (i == 0 || j == 0 || i + j == 0)
        throw config_error("massey: i, j and i + j must be nonzero");
    RepresentativeMode m = RepresentativeMode::OrderP;
    if (mode == "paperliteral") m = RepresentativeMode::PaperLiteral;
    else if (mode != "orderp") throw config_error("massey: unknown mode " + mode);

    const MasseyResult res = massey(ctx, i, j, m);

    if (cfg.format == OutputFormat::Json)
        return {0, massey_certificate(ctx, res).dump(2) + "\n"};

    const Context& e = *res.chain_ctx;
    std::ostringstream os;
    os << context_line(ctx) << "\n";
    os << "<gamma_" << i << ", p, gamma_" << j << ">  in  H^" << res.result_cochain.degree
       << " = " << homology_group(ctx, res.result_cochain.degree).str(ctx.p) << "\n";
    os << "  representative a: index0 = " << res.a.seqs[0].coeffs[0] << " at twist " << i << "\n";
    os << "  representative c: index0 = " << res.c.seqs[0].coeffs[0] << " at twist " << j << "\n";
    os << "  witness u (degree " << res.u.degree << "): d-check "
       << (res.u_check ? "zero residue" : "FAILED") << "\n";
    os << "  witness v (degree " << res.v.degree << "): d-check "
       << (res.v_check ? "zero residue" : "FAILED") << "\n";
    os << "  result class: " << res.result_class.str(e) << ", order ";
    if (res.order.infinite) os << "infinite";
    else os << res.order.value;
    os << ", indeterminacy " << res.indeterminacy.str(ctx.p) << "\n";
    return {res.u_check && res.v_check ? 0 : 1, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for a truncated Adams-operation cochain complex"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string format = "pretty";
    app.add_option("--p", cfg.p, "odd prime");
    app.add_option("--precision", cfg.precision, "work modulo p^precision");
    app.add_option("--length", cfg.length, "sequence truncation (0 = auto)");
    app.add_option("--unit", cfg.unit, "Adams unit override (0 = smallest generator)");
    app.add_option("--seed", cfg.seed, "seed for sampled checks");
    app.add_option("--format", format, "pretty | json | csv");
    app.add_option("--cache-dir", cfg.cache_dir, "cache directory");
    app.add_flag("--exact-scalars", cfg.exact_scalars,
                 "use the exact twist scalars instead of the normalized p powers");

    auto* verify = app.add_subcommand("verify", "run the property suites");
    std::string k_range = "-3..3";
    uint32_t samples = 100;
    verify->add_option("--k", k_range, "window range a..b");
    verify->add_option("--samples", samples, "samples per property");

    auto* table = app.add_subcommand("table", "homology table over a degree range");
    int64_t from = -2, to = 10;
    table->add_option("--from", from, "first degree");
    table->add_option("--to", to, "last degree");

    auto* homology_cmd = app.add_subcommand("homology", "one degree in detail");
    int64_t degree_n = 0;
    homology_cmd->add_option("--n", degree_n, "degree")->required();

    auto* product = app.add_subcommand("product", "torsion pairing into H^2");
    int64_t prod_k = 1;
    uint64_t prod_a = 1, prod_b = 1;
    product->add_option("--k", prod_k, "twist")->required();
    product->add_option("--a", prod_a, "left invariant");
    product->add_option("--b", prod_b, "right invariant");

    auto* massey_cmd = app.add_subcommand("massey", "triple bracket <gamma_i, p, gamma_j>");
    int64_t mi = 1, mj = 1;
    std::string mode = "orderp";
    massey_cmd->add_option("--i", mi, "left index")->required();
    massey_cmd->add_option("--j", mj, "right index")->required();
    massey_cmd->add_option("--mode", mode, "orderp | paperliteral");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.format = parse_format(format);
        std::string command, args;
        if (verify->parsed()) {
            command = "verify";
            args = k_range + ";" + std::to_string(samples);
        } else if (table->parsed()) {
            command = "table";
            args = std::to_string(from) + ";" + std::to_string(to);
        } else if (homology_cmd->parsed()) {
            command = "homology";
            args = std::to_string(degree_n);
        } else if (product->parsed()) {
            command = "product";
            args = std::to_string(prod_k) + ";" + std::to_string(prod_a) + ";" +
                   std::to_string(prod_b);
        } else {
            command = "massey";
            args = std::to_string(mi) + ";" + std::to_string(mj) + ";" + mode;
        }
        if (cfg.format == OutputFormat::Csv && command != "table")
            throw config_error("csv output is only available for the table command");

        const std::string key = cache_key(cfg, command, args);
        if (!cfg.cache_dir.empty()) {
            if (auto hit = cache_load(cfg.cache_dir, key)) {
                std::cout << hit->output;
                return hit->exit_code;
            }
        }

        CommandOutput out;
        if (command == "verify") {
            const auto [lo, hi] = parse_range(k_range);
            out = run_verify(cfg, lo, hi, samples);
        } else if (command == "table") {
            out = run_table(cfg, from, to);
        } else if (command == "homology") {
            out = run_homology(cfg, degree_n);
        } else if (command == "product") {
            out = run_product(cfg, prod_k, prod_a, prod_b);
        } else {
            out = run_massey(cfg, mi, mj, mode);
        }

        if (!cfg.cache_dir.empty()) cache_store(cfg.cache_dir, {key, out.exit_code, out.text});
        std::cout << out.text;
        return out.exit_code;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
