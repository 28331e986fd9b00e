#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "edga/products.hpp"

namespace edga {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { Pretty, Json, Csv };

/// CLI-facing configuration; validated against the Context invariants before
/// any computation runs.
struct RunConfig {
    uint64_t p = 5;
    uint32_t precision = 3;
    uint32_t length = 0;   // 0: auto
    uint64_t unit = 0;     // 0: smallest generator
    uint64_t seed = 42;
    OutputFormat format = OutputFormat::Pretty;
    std::string cache_dir;
    bool exact_scalars = false;

    Context make_context() const;
};

OutputFormat parse_format(const std::string& name);

nlohmann::json context_json(const Context& c);
nlohmann::json seq_json(const ThetaSeq& s);
ThetaSeq seq_from_json(const Context& c, const nlohmann::json& j);
nlohmann::json fraction_json(const PadicFraction& f);
nlohmann::json cochain_json(const Cochain& x);
Cochain cochain_from_json(const Context& c, const nlohmann::json& j);
nlohmann::json class_json(const Context& c, const HomologyClass& cls);

nlohmann::json massey_certificate(const Context& base, const MasseyResult& res);

/// Re-runs the embedded witness checks of a certificate: rebuilds the
/// context and cochains from the JSON and applies the differential.
bool recheck_certificate(const nlohmann::json& cert);

/// Deterministic cache keyed on (context, command, arguments, format,
/// version); hits reproduce the stored bytes exactly.
struct CacheEntry {
    std::string key;
    int exit_code = 0;
    std::string output;
};

std::string cache_key(const RunConfig& cfg, const std::string& command,
                      const std::string& args);
std::optional<CacheEntry> cache_load(const std::string& dir, const std::string& key);
void cache_store(const std::string& dir, const CacheEntry& entry);

}  // namespace edga
