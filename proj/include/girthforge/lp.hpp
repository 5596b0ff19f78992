#pragma once

#include <optional>
#include <string>
#include <vector>

#include "girthforge/rational.hpp"

namespace gf {

// Exact-rational LP over equality rows with boxed variables:
//   maximize c^T x  s.t.  A x = b,  lo <= x <= hi  (hi may be infinite).
// Columns are sparse with integer coefficients (edge-clique incidences and
// friends); bounds, rhs and objective are exact rationals.
//
// The solver is an exact bounded-variable simplex with Bland's rule. Large
// instances get a floating-point warm start whose final basis is re-derived
// exactly (Dixon p-adic solves); infeasibility always carries a Farkas
// certificate that lp_check_farkas re-verifies independently.
struct LpProblem {
    int rows = 0;
    std::vector<std::vector<std::pair<int, long long>>> cols;  // (row, coeff)
    std::vector<Rat> lo;
    std::vector<Rat> hi;        // used when hi_inf is false
    std::vector<char> hi_inf;   // per column
    std::vector<Rat> b;
    std::vector<Rat> c;

    int add_col(std::vector<std::pair<int, long long>> entries, Rat lo_, std::optional<Rat> hi_,
                Rat obj = Rat(0));
};

enum class LpStatus { Optimal, Infeasible, Unbounded, Error };

struct LpResult {
    LpStatus status = LpStatus::Error;
    std::vector<Rat> x;
    Rat objective;
    std::vector<Rat> farkas;  // per-row certificate when infeasible
    std::string note;
};

LpResult lp_solve(const LpProblem& p);

// Independent Farkas recheck: sup over the box of y^T A x must fall strictly
// below y^T b. Columns with infinite upper bound need y^T A_j <= 0.
bool lp_check_farkas(const LpProblem& p, const std::vector<Rat>& y);

}  // namespace gf
