#include "edga/certificate.hpp"

#include <filesystem>
#include <fstream>

namespace edga {

using nlohmann::json;

Context RunConfig::make_context() const {
    return Context(p, precision, length, unit,
                   exact_scalars ? ScalarMode::Exact : ScalarMode::Normalized);
}

OutputFormat parse_format(const std::string& name) {
    if (name == "pretty") return OutputFormat::Pretty;
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    throw config_error("unknown output format: " + name);
}

json context_json(const Context& c) {
    return {{"p", c.p}, {"precision", c.precision}, {"length", c.length}, {"unit", c.unit}};
}

json seq_json(const ThetaSeq& s) {
    const uint32_t end = s.support_end();
    std::vector<uint64_t> coeffs(s.coeffs.begin(), s.coeffs.begin() + end);
    return {{"twist", s.twist}, {"coeffs", coeffs}};
}

ThetaSeq seq_from_json(const Context& c, const json& j) {
    ThetaSeq s(c, j.at("twist").get<int64_t>());
    const auto coeffs = j.at("coeffs").get<std::vector<uint64_t>>();
    if (coeffs.size() > c.length) throw shape_error("serialized sequence too long");
    for (size_t m = 0; m < coeffs.size(); ++m) s.coeffs[m] = coeffs[m] % c.modulus;
    return s;
}

json fraction_json(const PadicFraction& f) {
    return {{"mantissa", f.mantissa.residue}, {"exponent", f.exponent}};
}

json cochain_json(const Cochain& x) {
    json seqs = json::array();
    for (const ThetaSeq& s : x.seqs) seqs.push_back(seq_json(s));
    json out = {{"degree", x.degree}, {"seqs", seqs}};
    if (x.rat) out["rational"] = fraction_json(*x.rat);
    return out;
}

Cochain cochain_from_json(const Context& c, const json& j) {
    std::vector<ThetaSeq> seqs;
    for (const json& s : j.at("seqs")) seqs.push_back(seq_from_json(c, s));
    std::optional<PadicFraction> rat;
    if (j.contains("rational"))
        rat = PadicFraction(
            PadicInt::from_residue(c, j["rational"].at("mantissa").get<uint64_t>()),
            j["rational"].at("exponent").get<uint32_t>());
    return Cochain::make(c, j.at("degree").get<int64_t>(), std::move(seqs), std::move(rat));
}

json class_json(const Context& c, const HomologyClass& cls) {
    json out = {{"degree", cls.degree}, {"display", cls.str(c)}};
    switch (cls.kind) {
        case HomologyClass::Kind::Zero: out["kind"] = "zero"; break;
        case HomologyClass::Kind::Torsion:
            out["kind"] = "torsion";
            out["value"] = cls.torsion_value;
            out["modulus_exponent"] = cls.torsion_exponent;
            break;
        case HomologyClass::Kind::LocalInt:
            out["kind"] = "local-integer";
            out["value"] = cls.local_residue;
            break;
        case HomologyClass::Kind::ModLocal:
            out["kind"] = "mod-local";
            out["numerator"] = cls.q_num;
            out["exponent"] = cls.q_exp;
            break;
    }
    return out;
}

json massey_certificate(const Context& base, const MasseyResult& res) {
    const Context& e = *res.chain_ctx;
    json result = {
        {"i", res.i},
        {"j", res.j},
        {"mode", res.mode == RepresentativeMode::OrderP ? "order-p" : "paper-literal"},
        {"degree", res.result_cochain.degree},
        {"group", homology_group(base, res.result_cochain.degree).str(base.p)},
        {"class", class_json(e, res.result_class)},
        {"order", res.order.value},
        {"order_infinite", res.order.infinite},
        {"indeterminacy", res.indeterminacy.str(base.p)},
        {"chain_mode", "exact"},
        {"representative_a", cochain_json(res.a)},
        {"representative_b", cochain_json(res.b)},
        {"representative_c", cochain_json(res.c)},
        {"result_cochain", cochain_json(res.result_cochain)},
    };
    json checks = json::array();
    checks.push_back({{"degree", res.u.degree},
                      {"witness", cochain_json(res.u)},
                      {"target", cochain_json(res.target_u)},
                      {"residue_zero", res.u_check}});
    checks.push_back({{"degree", res.v.degree},
                      {"witness", cochain_json(res.v)},
                      {"target", cochain_json(res.target_v)},
                      {"residue_zero", res.v_check}});
    return {{"version", kVersion},
            {"command", "massey"},
            {"context", context_json(base)},
            {"chain_context",
             {{"p", e.p}, {"precision", e.precision}, {"length", e.length}, {"unit", e.unit},
              {"mode", "exact"}}},
            {"inputs", {{"i", res.i}, {"j", res.j}}},
            {"results", json::array({result})},
            {"witness_checks", checks}};
}

bool recheck_certificate(const json& cert) {
    const json& cj = cert.contains("chain_context") ? cert["chain_context"] : cert["context"];
    const bool exact = cj.contains("mode") && cj["mode"] == "exact";
    Context c(cj.at("p").get<uint64_t>(), cj.at("precision").get<uint32_t>(),
              cj.at("length").get<uint32_t>(), cj.at("unit").get<uint64_t>(),
              exact ? ScalarMode::Exact : ScalarMode::Normalized);
    for (const json& check : cert.at("witness_checks")) {
        if (!check.contains("witness")) continue;
        const Cochain w = cochain_from_json(c, check["witness"]);
        const Cochain target = cochain_from_json(c, check["target"]);
        if ((differential(w) == target) != check.at("residue_zero").get<bool>()) return false;
    }
    return true;
}

namespace {

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Pretty: return "pretty";
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
    }
    return "?";
}

}  // namespace

std::string cache_key(const RunConfig& cfg, const std::string& command,
                      const std::string& args) {
    return "p=" + std::to_string(cfg.p) + ";M=" + std::to_string(cfg.precision) +
           ";N=" + std::to_string(cfg.length) + ";r=" + std::to_string(cfg.unit) +
           ";exact=" + (cfg.exact_scalars ? "1" : "0") + ";seed=" + std::to_string(cfg.seed) +
           ";fmt=" + format_name(cfg.format) + ";cmd=" + command + ";args=" + args +
           ";version=" + kVersion;
}

std::optional<CacheEntry> cache_load(const std::string& dir, const std::string& key) {
    namespace fs = std::filesystem;
    const fs::path path = fs::path(dir) / (std::to_string(fnv1a64(key)) + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    in >> j;
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    return CacheEntry{key, j.at("exit").get<int>(), j.at("output").get<std::string>()};
}

void cache_store(const std::string& dir, const CacheEntry& entry) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / (std::to_string(fnv1a64(entry.key)) + ".json");
    std::ofstream out(path);
    out << json{{"key", entry.key}, {"exit", entry.exit_code}, {"output", entry.output}};
}

}  // namespace edga
