#pragma once

#include "koch/cases.hpp"
#include "koch/family_search.hpp"
#include "koch/json_io.hpp"

#include <optional>

namespace koch {

bool evaluate_predicate(const CaseContext& ctx, const CasePredicate& c, const std::vector<Word>& family);

// 1..4 by how many of K^(1), K^(2), K^(3) the family meets (3 -> 1, ..., 0 -> 4);
// 0 when the family lies in a single 1-cell.
int top_level_case(const CaseContext& ctx, const std::vector<Word>& family);

// Expanded family when a registered similarity scales the family one level up and
// the result still meets every intersect_required region.
std::optional<std::vector<Word>> scale_up(const CaseContext& ctx, const CasePredicate& c,
                                          const std::vector<Word>& family);
// Index into c.expansions of the first similarity that scales the family.
std::optional<std::size_t> scaling_index(const CaseContext& ctx, const CasePredicate& c,
                                         const std::vector<Word>& family);
bool is_scaleable(const CaseContext& ctx, const CasePredicate& c, const std::vector<Word>& family);

// Scaleable in the measure sense: some 1-cell map or registered similarity of any
// case carries every cell onto a distinct cell one level up. Such families have the
// same diameter^s / measure ratio as their expansion.
bool ratio_preserving_expansion(const CaseContext& ctx, const std::vector<Word>& family);

struct CaseSearchOptions {
  bool exclude_scaleable = false;
  int threads = 1;
  std::uint64_t node_budget = 0;  // 0: KOCH_BUDGET_NODES or the built-in default
};

struct CaseSearchResult {
  bool vacuous = false;  // no level-n family satisfies the predicate
  Interval diameter;
  std::vector<Word> witness;
  std::uint64_t nodes = 0;
  std::uint64_t families = 0;
  std::uint64_t scaleable_skipped = 0;
  std::size_t admissible_cells = 0;
};

CaseSearchResult min_case_diameter(const CaseContext& ctx, const CasePredicate& c, int n,
                                   const CaseSearchOptions& opts = {});

inline constexpr double kBetaTolerance = 1e-6;

struct BetaReport {
  std::string case_id;
  int N = 0;
  int n = 0;
  double beta = 0.0;
  bool pass = false;
  CaseSearchResult result;
};

// PASS iff lo(min diameter) >= beta - kBetaTolerance; a vacuous case passes.
BetaReport verify_beta(const CaseContext& ctx, const CasePredicate& c, int n, double beta,
                       const CaseSearchOptions& opts = {});
Json beta_report_json(const BetaReport& r);

double square_lemma_bound(double ell);
double flap_lemma_bound(int N);

struct Case3aPoints {
  Vec3 q1, q2, q3;
};
Case3aPoints case3a_constraint_points();

// Signed angle between the oriented base planes of two level-1 cells that share an
// edge: positive when the second cell rises above the first, negative for a ridge.
double dihedral_angle(const KochSurfaceSpec& spec, int a, int b);

}  // namespace koch
