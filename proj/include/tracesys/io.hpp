#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

#include "tracesys/dcs.hpp"
#include "tracesys/monoid.hpp"
#include "tracesys/polynomial.hpp"
#include "tracesys/probability.hpp"
#include "tracesys/system.hpp"

namespace tracesys::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

/// Parses a file; SchemaError on I/O or syntax errors.
Json read_file(const std::filesystem::path& path);

/// {"alphabet": [...], "independence": [[a,b], ...]}
TraceMonoid monoid_from_json(const Json& j);
Json to_json(const TraceMonoid& m);

/// {"layers": [[...], ...]}
Trace trace_from_json(const TraceMonoid& m, const Json& j);
Json to_json(const TraceMonoid& m, const Trace& x);

/// {"prefix": [...], "cycle": [...]}, both lists of cliques.
Lasso lasso_from_json(const TraceMonoid& m, const Json& j);
Json to_json(const TraceMonoid& m, const Lasso& w);

/// System JSON, or monoid JSON (read as the single-state system).
ConcurrentSystem system_from_json(const Json& j);
Json to_json(const ConcurrentSystem& s);

PetriNet petri_from_json(const Json& j);

/// {"weights": [{"state", "letter", "value"}]}; values are decimal or
/// fraction strings, or JSON numbers read through their decimal text.
std::vector<WeightEntry> weights_from_json(const Json& j);
Json to_json(const Valuation& v);

Json clique_json(const TraceMonoid& m, Clique c);
/// [state, clique]
Json node_json(const ConcurrentSystem& s, const SCDigraph::Node& n);
/// Coefficient strings, lowest degree first.
Json to_json(const Polynomial& p);
Json to_json(const PolyMatrix& m);
Json number_json(double x, const std::optional<Rational>& exact = std::nullopt);

/// Decimal value, bracket, defining polynomial, and the exact value when
/// rational or a closed form when the defining polynomial is quadratic.
Json to_json(const RootResult& r);
/// "(p - q*sqrt(d))/s"-style closed form of a root of a quadratic, if any.
std::optional<std::string> quadratic_surd(const RootResult& r);

Json to_json(const SystemClassification& c);
Json to_json(const ConcurrentSystem& s, const UniformMeasure& u, const NumericPolicy& policy);
Json to_json(const ConcurrentSystem& s, const MarkovChain& chain);
Json to_json(const ConcurrentSystem& s, const SpectralReport& r);
Json to_json(const ConcurrentSystem& s, const DcsReport& r);
Json to_json(const ConcurrentSystem& s, const ExecutionLasso& t);

}  // namespace tracesys::io
