#pragma once

#include <string>

#include "json.hpp"

#include "ckmax/constants.hpp"
#include "ckmax/estimates.hpp"
#include "ckmax/fourier.hpp"
#include "ckmax/operators.hpp"
#include "ckmax/quasi_norm.hpp"
#include "ckmax/search.hpp"

namespace ckmax {

// Reports use ordered_json so equal runs serialize to identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ckmax-report/1";

Json index_to_json(Index p);
Index index_from_json(const Json& j);

Json space_to_json(const AtomicSpace& space);
AtomicSpace space_from_json(const Json& j);

Json weight_to_json(const WeightFunction& w);
WeightFunction weight_from_json(const Json& j);

Json norm_to_json(const QuasiNorm& norm);
/// Norm from {family: ..., parameters...} over a given space. Blocks are
/// encoded as [begin, end) index pairs.
QuasiNorm norm_from_json(const AtomicSpace& space, const Json& j);

Json vector_to_json(const LatticeVector& f);
LatticeVector vector_from_json(const AtomicSpace& space, const Json& j);

/// Loads a {space, norm, vector?} document.
struct NormProblem {
  AtomicSpace space;
  QuasiNorm norm;
  std::optional<LatticeVector> vector;
};
NormProblem problem_from_json(const Json& j);

Json to_json(const SearchConfig& cfg);
Json to_json(const SearchStats& stats);
Json to_json(const EstimateResult& r);
Json to_json(const ConstantsReport& r);
Json to_json(const DualityReport& r);
Json to_json(const CKReport& r);
Json to_json(const DualVerifyReport& r);
Json to_json(const MpzReport& r);
Json to_json(const AmalgamHYReport& r);

}  // namespace ckmax
