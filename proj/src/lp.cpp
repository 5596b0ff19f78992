#include "girthforge/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>

namespace gf {

int LpProblem::add_col(std::vector<std::pair<int, long long>> entries, Rat lo_,
                       std::optional<Rat> hi_, Rat obj) {
    cols.push_back(std::move(entries));
    lo.push_back(std::move(lo_));
    if (hi_) {
        hi.push_back(*hi_);
        hi_inf.push_back(0);
    } else {
        hi.push_back(Rat(0));
        hi_inf.push_back(1);
    }
    c.push_back(std::move(obj));
    return static_cast<int>(cols.size()) - 1;
}

namespace {

constexpr uint64_t kPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL, 2147483579ULL};

uint64_t mod_pow(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

// LU factorization mod p with partial pivoting; solves via stored factors
struct ModLu {
    int n = 0;
    uint64_t p = 0;
    std::vector<uint64_t> lu;  // row-major
    std::vector<int> perm;

    bool factor(const std::vector<long long>& mat, int n_, uint64_t p_) {
        n = n_;
        p = p_;
        lu.assign(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long long v = mat[static_cast<size_t>(i) * n + j] % static_cast<long long>(p);
                if (v < 0) v += static_cast<long long>(p);
                lu[static_cast<size_t>(i) * n + j] = static_cast<uint64_t>(v);
            }
        perm.resize(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int k = 0; k < n; ++k) {
            int piv = -1;
            for (int i = k; i < n; ++i)
                if (lu[static_cast<size_t>(i) * n + k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return false;
            if (piv != k) {
                for (int j = 0; j < n; ++j)
                    std::swap(lu[static_cast<size_t>(piv) * n + j], lu[static_cast<size_t>(k) * n + j]);
                std::swap(perm[piv], perm[k]);
            }
            uint64_t inv = mod_pow(lu[static_cast<size_t>(k) * n + k], p - 2, p);
            for (int i = k + 1; i < n; ++i) {
                uint64_t f = lu[static_cast<size_t>(i) * n + k] * inv % p;
                lu[static_cast<size_t>(i) * n + k] = f;
                if (!f) continue;
                for (int j = k + 1; j < n; ++j) {
                    uint64_t sub = f * lu[static_cast<size_t>(k) * n + j] % p;
                    uint64_t& tgt = lu[static_cast<size_t>(i) * n + j];
                    tgt = (tgt + p - sub) % p;
                }
            }
        }
        return true;
    }

    void solve(const std::vector<uint64_t>& rhs, std::vector<uint64_t>& out) const {
        std::vector<uint64_t> y(n);
        for (int i = 0; i < n; ++i) y[i] = rhs[perm[i]];
        for (int i = 0; i < n; ++i) {
            uint64_t acc = y[i];
            for (int j = 0; j < i; ++j)
                acc = (acc + p - lu[static_cast<size_t>(i) * n + j] * y[j] % p) % p;
            y[i] = acc;
        }
        out.assign(n, 0);
        for (int i = n - 1; i >= 0; --i) {
            uint64_t acc = y[i];
            for (int j = i + 1; j < n; ++j)
                acc = (acc + p - lu[static_cast<size_t>(i) * n + j] * out[j] % p) % p;
            out[i] = acc * mod_pow(lu[static_cast<size_t>(i) * n + i], p - 2, p) % p;
        }
    }
};

// Exact solver for M x = rhs (M integer, rhs rational) via Dixon lifting with
// a-posteriori verification. Returns false when M is singular.
struct ExactSolver {
    int n = 0;
    std::vector<long long> M;  // row-major
    ModLu lu;
    bool ok = false;

    bool prepare(std::vector<long long> mat, int n_) {
        n = n_;
        M = std::move(mat);
        for (uint64_t p : kPrimes)
            if (lu.factor(M, n, p)) {
                ok = true;
                return true;
            }
        return false;  // singular mod several primes: treat as singular
    }

    // one lifting pass with k iterations
    bool lift(const std::vector<Int>& r0, int k, std::vector<Rat>& out) const {
        uint64_t p = lu.p;
        std::vector<Int> r = r0;
        std::vector<Int> acc(n, Int(0));
        Int P(1);
        std::vector<uint64_t> rm(n), xm(n);
        for (int it = 0; it < k; ++it) {
            for (int i = 0; i < n; ++i) {
                Int v = r[i] % static_cast<long long>(p);
                long long vv = v.convert_to<long long>();
                if (vv < 0) vv += static_cast<long long>(p);
                rm[i] = static_cast<uint64_t>(vv);
            }
            lu.solve(rm, xm);
            for (int i = 0; i < n; ++i)
                if (xm[i]) acc[i] += P * Int(xm[i]);
            // r = (r - M x) / p exactly
            for (int i = 0; i < n; ++i) {
                Int s = r[i];
                const long long* row = &M[static_cast<size_t>(i) * n];
                for (int j = 0; j < n; ++j)
                    if (row[j] && xm[j]) s -= Int(row[j]) * Int(xm[j]);
                r[i] = s / static_cast<long long>(p);
            }
            P *= static_cast<long long>(p);
        }
        // rational reconstruction of acc mod P
        Int half = P / 2;
        Int bound = boost::multiprecision::sqrt(half);
        out.assign(n, Rat(0));
        for (int i = 0; i < n; ++i) {
            Int a = acc[i] % P;
            if (a < 0) a += P;
            Int r0_ = P, r1 = a, t0 = 0, t1 = 1;
            while (r1 > bound) {
                Int q = r0_ / r1;
                Int r2 = r0_ - q * r1;
                r0_ = r1;
                r1 = r2;
                Int t2 = t0 - q * t1;
                t0 = t1;
                t1 = t2;
            }
            if (t1 == 0) return false;
            Int num = r1, den = t1;
            if (den < 0) {
                num = -num;
                den = -den;
            }
            if (den > bound) return false;
            out[i] = Rat(num, den);
        }
        return true;
    }

    bool solve(const std::vector<Rat>& rhs, std::vector<Rat>& out) const {
        // scale rhs to integers
        Int D(1);
        for (auto& v : rhs) D = boost::multiprecision::lcm(D, Int(denominator(v)));
        std::vector<Int> r0(n);
        for (int i = 0; i < n; ++i) r0[i] = Int(numerator(rhs[i])) * (D / Int(denominator(rhs[i])));
        // initial iteration estimate from Hadamard-ish bounds
        long double logb = 0;
        for (int j = 0; j < n; ++j) {
            long double s = 0;
            for (int i = 0; i < n; ++i) {
                long double v = static_cast<long double>(M[static_cast<size_t>(i) * n + j]);
                s += v * v;
            }
            logb += 0.5L * std::log2(std::max<long double>(s, 1.0L));
        }
        long double logr = 1;
        for (auto& v : r0) {
            long double av = std::abs(v.convert_to<long double>());
            if (av > 1) logr = std::max(logr, std::log2(av));
        }
        long double need = 2 * (logb + logr) + 16;
        int k = static_cast<int>(need / std::log2(static_cast<long double>(lu.p))) + 2;
        for (int round = 0; round < 4; ++round, k *= 2) {
            std::vector<Rat> cand;
            if (!lift(r0, k, cand)) continue;
            // verify M cand == r0
            bool good = true;
            for (int i = 0; i < n && good; ++i) {
                Rat s(0);
                const long long* row = &M[static_cast<size_t>(i) * n];
                for (int j = 0; j < n; ++j)
                    if (row[j]) s += Rat(row[j]) * cand[j];
                if (s != Rat(r0[i])) good = false;
            }
            if (good) {
                out.resize(n);
                for (int i = 0; i < n; ++i) out[i] = cand[i] / Rat(D);
                return true;
            }
        }
        return false;
    }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bounded-variable primal simplex in doubles, used as a warm start. Returns
// the final basis and nonbasic states; correctness is established later by
// the exact loop.
struct FpSimplex {
    int m = 0, nv = 0;
    const std::vector<std::vector<std::pair<int, long long>>>* cols;
    std::vector<double> lo, hi, c;
    std::vector<double> bvec;
    std::vector<int> basis;      // row -> var
    std::vector<uint8_t> state;  // 0 lower, 1 upper, 2 basic
    std::vector<double> binv;    // m*m
    std::vector<double> xb;
    long long max_iters = 0;

    double col_dot(int j, const std::vector<double>& y) const {
        double s = 0;
        for (auto [r, v] : (*cols)[j]) s += y[r] * static_cast<double>(v);
        return s;
    }

    bool refactor() {
        std::vector<double> B(static_cast<size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i)
            for (auto [r, v] : (*cols)[basis[i]]) B[static_cast<size_t>(r) * m + i] = static_cast<double>(v);
        // Gauss-Jordan inverse with partial pivoting
        std::vector<double> inv(static_cast<size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) inv[static_cast<size_t>(i) * m + i] = 1.0;
        for (int k = 0; k < m; ++k) {
            int piv = k;
            double best = std::fabs(B[static_cast<size_t>(k) * m + k]);
            for (int i = k + 1; i < m; ++i) {
                double v = std::fabs(B[static_cast<size_t>(i) * m + k]);
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (best < 1e-12) return false;
            if (piv != k)
                for (int j = 0; j < m; ++j) {
                    std::swap(B[static_cast<size_t>(piv) * m + j], B[static_cast<size_t>(k) * m + j]);
                    std::swap(inv[static_cast<size_t>(piv) * m + j], inv[static_cast<size_t>(k) * m + j]);
                }
            double d = 1.0 / B[static_cast<size_t>(k) * m + k];
            for (int j = 0; j < m; ++j) {
                B[static_cast<size_t>(k) * m + j] *= d;
                inv[static_cast<size_t>(k) * m + j] *= d;
            }
            for (int i = 0; i < m; ++i) {
                if (i == k) continue;
                double f = B[static_cast<size_t>(i) * m + k];
                if (f == 0.0) continue;
                for (int j = 0; j < m; ++j) {
                    B[static_cast<size_t>(i) * m + j] -= f * B[static_cast<size_t>(k) * m + j];
                    inv[static_cast<size_t>(i) * m + j] -= f * inv[static_cast<size_t>(k) * m + j];
                }
            }
        }
        binv = std::move(inv);
        return true;
    }

    void compute_xb() {
        std::vector<double> rhs = bvec;
        for (int j = 0; j < nv; ++j) {
            if (state[j] == 2) continue;
            double v = state[j] == 0 ? lo[j] : hi[j];
            if (v == 0.0) continue;
            for (auto [r, cv] : (*cols)[j]) rhs[r] -= v * static_cast<double>(cv);
        }
        xb.assign(m, 0.0);
        for (int i = 0; i < m; ++i) {
            double s = 0;
            for (int r = 0; r < m; ++r) s += binv[static_cast<size_t>(i) * m + r] * rhs[r];
            xb[i] = s;
        }
    }

    // runs primal simplex; true when it believes it reached optimality
    bool run() {
        if (!refactor()) return false;
        compute_xb();
        long long it = 0;
        int since_refactor = 0;
        while (it++ < max_iters) {
            // y = c_B^T B^-1
            std::vector<double> y(m, 0.0);
            for (int i = 0; i < m; ++i) {
                double cb = c[basis[i]];
                if (cb == 0.0) continue;
                for (int r = 0; r < m; ++r) y[r] += cb * binv[static_cast<size_t>(i) * m + r];
            }
            int enter = -1;
            double best_score = 1e-7;
            uint8_t enter_state = 0;
            for (int j = 0; j < nv; ++j) {
                if (state[j] == 2) continue;
                double d = c[j] - col_dot(j, y);
                if (state[j] == 0 && d > best_score) {
                    best_score = d;
                    enter = j;
                    enter_state = 0;
                } else if (state[j] == 1 && -d > best_score) {
                    best_score = -d;
                    enter = j;
                    enter_state = 1;
                }
            }
            if (enter < 0) return true;
            // direction w = B^-1 A_enter
            std::vector<double> acol(m, 0.0);
            for (auto [r, v] : (*cols)[enter]) acol[r] = static_cast<double>(v);
            std::vector<double> w(m, 0.0);
            for (int i = 0; i < m; ++i) {
                double s = 0;
                for (int r = 0; r < m; ++r) s += binv[static_cast<size_t>(i) * m + r] * acol[r];
                w[i] = s;
            }
            double sign = enter_state == 0 ? 1.0 : -1.0;  // entering increases/decreases
            double tmax = hi[enter] < kInf ? hi[enter] - lo[enter] : kInf;
            int leave = -1;
            double leave_to_upper = 0;
            for (int i = 0; i < m; ++i) {
                double delta = -sign * w[i];  // x_B[i] moves by delta * t
                if (delta < -1e-11) {
                    double room = xb[i] - lo[basis[i]];
                    double t = room / (-delta);
                    if (t < tmax - 1e-12) {
                        tmax = t;
                        leave = i;
                        leave_to_upper = 0;
                    }
                } else if (delta > 1e-11 && hi[basis[i]] < kInf) {
                    double room = hi[basis[i]] - xb[i];
                    double t = room / delta;
                    if (t < tmax - 1e-12) {
                        tmax = t;
                        leave = i;
                        leave_to_upper = 1;
                    }
                }
            }
            if (tmax == kInf) return true;  // unbounded; exact loop will confirm
            if (leave < 0) {
                // bound switch
                state[enter] = enter_state == 0 ? 1 : 0;
                compute_xb();
                continue;
            }
            int out_var = basis[leave];
            state[out_var] = leave_to_upper ? 1 : 0;
            basis[leave] = enter;
            state[enter] = 2;
            if (++since_refactor >= 64) {
                since_refactor = 0;
                if (!refactor()) return false;
            } else {
                // eta update of binv: row ops pivoting on w[leave]
                double piv = w[leave];
                if (std::fabs(piv) < 1e-11) {
                    if (!refactor()) return false;
                } else {
                    for (int r = 0; r < m; ++r)
                        binv[static_cast<size_t>(leave) * m + r] /= piv;
                    for (int i = 0; i < m; ++i) {
                        if (i == leave) continue;
                        double f = w[i];
                        if (f == 0.0) continue;
                        for (int r = 0; r < m; ++r)
                            binv[static_cast<size_t>(i) * m + r] -=
                                f * binv[static_cast<size_t>(leave) * m + r];
                    }
                }
            }
            compute_xb();
        }
        return true;  // iteration cap; exact loop proceeds from here
    }
};

// Exact bounded-variable simplex with Bland's rule. Works on the augmented
// problem (structurals + artificials); per-iteration linear algebra goes
// through Dixon solves against the current basis.
struct ExactSimplex {
    int m = 0, nv = 0;
    const std::vector<std::vector<std::pair<int, long long>>>* cols;
    std::vector<Rat> lo, hi, c;
    std::vector<char> hi_inf;
    std::vector<Rat> bvec;
    std::vector<int> basis;
    std::vector<uint8_t> state;
    std::vector<Rat> xb;
    std::vector<Rat> y;
    bool unbounded = false;
    bool broken = false;  // exactly-infeasible basis handed in, or singular
    long long iterations = 0;
    long long iter_cap = 1000000;

    Rat bound_value(int j) const { return state[j] == 0 ? lo[j] : hi[j]; }

    bool solver_for_basis(ExactSolver& sol, bool transpose) const {
        std::vector<long long> M(static_cast<size_t>(m) * m, 0);
        for (int i = 0; i < m; ++i)
            for (auto [r, v] : (*cols)[basis[i]]) {
                if (transpose)
                    M[static_cast<size_t>(i) * m + r] = v;
                else
                    M[static_cast<size_t>(r) * m + i] = v;
            }
        return sol.prepare(std::move(M), m);
    }

    bool compute_state() {
        ExactSolver sol;
        if (!solver_for_basis(sol, false)) return false;
        std::vector<Rat> rhs = bvec;
        for (int j = 0; j < nv; ++j) {
            if (state[j] == 2) continue;
            Rat v = bound_value(j);
            if (v == 0) continue;
            for (auto [r, cv] : (*cols)[j]) rhs[r] -= v * Rat(cv);
        }
        if (!sol.solve(rhs, xb)) return false;
        ExactSolver solT;
        if (!solver_for_basis(solT, true)) return false;
        std::vector<Rat> cb(m);
        for (int i = 0; i < m; ++i) cb[i] = c[basis[i]];
        if (!solT.solve(cb, y)) return false;
        return true;
    }

    bool primal_feasible() const {
        for (int i = 0; i < m; ++i) {
            int v = basis[i];
            if (xb[i] < lo[v]) return false;
            if (!hi_inf[v] && xb[i] > hi[v]) return false;
        }
        return true;
    }

    Rat reduced_cost(int j) const {
        Rat d = c[j];
        for (auto [r, v] : (*cols)[j]) d -= y[r] * Rat(v);
        return d;
    }

    // returns true on optimal, false on unbounded/broken
    bool run() {
        if (!compute_state()) {
            broken = true;
            return false;
        }
        if (!primal_feasible()) {
            broken = true;
            return false;
        }
        for (;;) {
            if (++iterations > iter_cap) {
                broken = true;
                return false;
            }
            // Bland: first eligible entering variable (fixed columns skipped)
            int enter = -1;
            uint8_t enter_state = 0;
            for (int j = 0; j < nv; ++j) {
                if (state[j] == 2) continue;
                if (!hi_inf[j] && lo[j] == hi[j]) continue;
                Rat d = reduced_cost(j);
                if (state[j] == 0 && d > 0) {
                    enter = j;
                    enter_state = 0;
                    break;
                }
                if (state[j] == 1 && d < 0) {
                    enter = j;
                    enter_state = 1;
                    break;
                }
            }
            if (enter < 0) return true;
            ExactSolver sol;
            if (!solver_for_basis(sol, false)) {
                broken = true;
                return false;
            }
            std::vector<Rat> acol(m, Rat(0));
            for (auto [r, v] : (*cols)[enter]) acol[r] = Rat(v);
            std::vector<Rat> w;
            if (!sol.solve(acol, w)) {
                broken = true;
                return false;
            }
            int sign = enter_state == 0 ? 1 : -1;
            bool has_t = false;
            Rat tmax;
            if (!hi_inf[enter]) {
                tmax = hi[enter] - lo[enter];
                has_t = true;
            }
            int leave = -1;
            bool leave_upper = false;
            for (int i = 0; i < m; ++i) {
                Rat delta = Rat(-sign) * w[i];
                int v = basis[i];
                Rat t;
                bool to_upper;
                if (delta < 0) {
                    t = (xb[i] - lo[v]) / (-delta);
                    to_upper = false;
                } else if (delta > 0 && !hi_inf[v]) {
                    t = (hi[v] - xb[i]) / delta;
                    to_upper = true;
                } else {
                    continue;
                }
                bool take = !has_t || t < tmax ||
                            (t == tmax && (leave < 0 || v < basis[leave]));
                if (take) {
                    tmax = t;
                    has_t = true;
                    leave = i;
                    leave_upper = to_upper;
                }
            }
            if (!has_t) {
                unbounded = true;
                return false;
            }
            if (leave < 0) {
                state[enter] = enter_state == 0 ? 1 : 0;  // bound switch
            } else {
                int out_var = basis[leave];
                state[out_var] = leave_upper ? 1 : 0;
                basis[leave] = enter;
                state[enter] = 2;
            }
            if (!compute_state()) {
                broken = true;
                return false;
            }
        }
    }
};

}  // namespace

bool lp_check_farkas(const LpProblem& p, const std::vector<Rat>& y) {
    if (static_cast<int>(y.size()) != p.rows) return false;
    Rat yb(0);
    for (int i = 0; i < p.rows; ++i) yb += y[i] * p.b[i];
    Rat sup(0);
    for (size_t j = 0; j < p.cols.size(); ++j) {
        Rat z(0);
        for (auto [r, v] : p.cols[j]) z += y[r] * Rat(v);
        if (z > 0) {
            if (p.hi_inf[j]) return false;  // sup infinite
            sup += z * p.hi[j];
        } else if (z < 0) {
            sup += z * p.lo[j];
        }
    }
    return sup < yb;
}

LpResult lp_solve(const LpProblem& p) {
    LpResult res;
    int m = p.rows;
    int n_struct = static_cast<int>(p.cols.size());
    // sanity
    for (int j = 0; j < n_struct; ++j)
        if (!p.hi_inf[j] && p.hi[j] < p.lo[j]) {
            res.status = LpStatus::Error;
            res.note = "inconsistent bounds on column " + std::to_string(j);
            return res;
        }

    // augmented column set: structurals then one artificial per row with sign
    // matching the initial residual
    std::vector<std::vector<std::pair<int, long long>>> cols = p.cols;
    std::vector<Rat> lo = p.lo, hi = p.hi, c0(n_struct + m, Rat(0));
    std::vector<char> hi_inf = p.hi_inf;
    std::vector<Rat> resid = p.b;
    for (int j = 0; j < n_struct; ++j) {
        if (p.lo[j] == 0) continue;
        for (auto [r, v] : p.cols[j]) resid[r] -= p.lo[j] * Rat(v);
    }
    for (int i = 0; i < m; ++i) {
        long long sgn = resid[i] >= 0 ? 1 : -1;
        cols.push_back({{i, sgn}});
        lo.push_back(Rat(0));
        hi.push_back(Rat(0));
        hi_inf.push_back(1);
        c0[n_struct + i] = Rat(-1);  // phase 1 maximizes -sum s
    }
    int nv = n_struct + m;

    auto make_exact = [&](const std::vector<Rat>& cost) {
        ExactSimplex ex;
        ex.m = m;
        ex.nv = nv;
        ex.cols = &cols;
        ex.lo = lo;
        ex.hi = hi;
        ex.hi_inf = hi_inf;
        ex.c = cost;
        ex.bvec = p.b;
        return ex;
    };

    // fresh start: artificial basis, structurals at lower bound
    auto scratch_state = [&](ExactSimplex& ex) {
        ex.basis.resize(m);
        ex.state.assign(nv, 0);
        for (int i = 0; i < m; ++i) {
            ex.basis[i] = n_struct + i;
            ex.state[n_struct + i] = 2;
        }
    };

    // ---- phase 1 ----
    ExactSimplex ph1 = make_exact(c0);
    scratch_state(ph1);
    bool use_fp = m > 90 || n_struct > 600;
    if (use_fp) {
        FpSimplex fp;
        fp.m = m;
        fp.nv = nv;
        fp.cols = &cols;
        fp.lo.resize(nv);
        fp.hi.resize(nv);
        fp.c.resize(nv);
        for (int j = 0; j < nv; ++j) {
            fp.lo[j] = to_double(lo[j]);
            fp.hi[j] = hi_inf[j] ? kInf : to_double(hi[j]);
            fp.c[j] = to_double(c0[j]);
        }
        fp.bvec.resize(m);
        for (int i = 0; i < m; ++i) fp.bvec[i] = to_double(p.b[i]);
        fp.basis = ph1.basis;
        fp.state.assign(ph1.state.begin(), ph1.state.end());
        fp.max_iters = 40LL * (m + n_struct) + 2000;
        if (fp.run()) {
            ExactSimplex warm = make_exact(c0);
            warm.basis = fp.basis;
            warm.state.assign(fp.state.begin(), fp.state.end());
            warm.iter_cap = 50000;
            if (warm.run()) {
                ph1 = std::move(warm);
            } else if (!warm.unbounded) {
                scratch_state(ph1);  // fall back to the scratch exact run below
                if (!ph1.run()) {
                    res.status = LpStatus::Error;
                    res.note = "exact phase 1 failed";
                    return res;
                }
            }
        } else {
            if (!ph1.run()) {
                res.status = LpStatus::Error;
                res.note = "exact phase 1 failed";
                return res;
            }
        }
    } else {
        if (!ph1.run()) {
            res.status = LpStatus::Error;
            res.note = "exact phase 1 failed";
            return res;
        }
    }

    // phase-1 objective value: -(sum of artificials)
    Rat art_sum(0);
    for (int i = 0; i < m; ++i)
        if (ph1.basis[i] >= n_struct) art_sum += ph1.xb[i];
    if (art_sum > 0) {
        res.status = LpStatus::Infeasible;
        res.farkas = ph1.y;
        // sign convention: maximize -sum s gives y with y^T b < 0 direction;
        // flip so that y^T b > sup holds
        if (!lp_check_farkas(p, res.farkas)) {
            std::vector<Rat> neg(m);
            for (int i = 0; i < m; ++i) neg[i] = -ph1.y[i];
            if (lp_check_farkas(p, neg)) {
                res.farkas = neg;
            } else {
                res.status = LpStatus::Error;
                res.note = "Farkas certificate failed the independent recheck";
                return res;
            }
        }
        return res;
    }

    // ---- phase 2: artificials locked to zero ----
    for (int i = 0; i < m; ++i) {
        hi_inf[n_struct + i] = 0;
        hi[n_struct + i] = Rat(0);
    }
    std::vector<Rat> c2(nv, Rat(0));
    for (int j = 0; j < n_struct; ++j) c2[j] = p.c[j];
    bool trivial_objective = true;
    for (int j = 0; j < n_struct; ++j)
        if (p.c[j] != 0) trivial_objective = false;

    ExactSimplex ph2 = make_exact(c2);
    ph2.basis = ph1.basis;
    ph2.state = ph1.state;
    if (!trivial_objective) {
        if (use_fp) {
            FpSimplex fp;
            fp.m = m;
            fp.nv = nv;
            fp.cols = &cols;
            fp.lo.resize(nv);
            fp.hi.resize(nv);
            fp.c.resize(nv);
            for (int j = 0; j < nv; ++j) {
                fp.lo[j] = to_double(lo[j]);
                fp.hi[j] = hi_inf[j] ? kInf : to_double(hi[j]);
                fp.c[j] = to_double(c2[j]);
            }
            fp.bvec.resize(m);
            for (int i = 0; i < m; ++i) fp.bvec[i] = to_double(p.b[i]);
            fp.basis = ph2.basis;
            fp.state.assign(ph2.state.begin(), ph2.state.end());
            fp.max_iters = 40LL * (m + n_struct) + 2000;
            if (fp.run()) {
                ExactSimplex warm = make_exact(c2);
                warm.basis = fp.basis;
                warm.state.assign(fp.state.begin(), fp.state.end());
                if (warm.run()) {
                    ph2 = std::move(warm);
                } else if (warm.unbounded) {
                    res.status = LpStatus::Unbounded;
                    return res;
                } else {
                    if (!ph2.run()) {
                        res.status = ph2.unbounded ? LpStatus::Unbounded : LpStatus::Error;
                        return res;
                    }
                }
            } else if (!ph2.run()) {
                res.status = ph2.unbounded ? LpStatus::Unbounded : LpStatus::Error;
                return res;
            }
        } else if (!ph2.run()) {
            res.status = ph2.unbounded ? LpStatus::Unbounded : LpStatus::Error;
            return res;
        }
    } else {
        // feasibility only: phase-1 point is already what we need
        if (!ph2.compute_state()) {
            res.status = LpStatus::Error;
            res.note = "state reconstruction failed";
            return res;
        }
    }

    res.status = LpStatus::Optimal;
    res.x.assign(n_struct, Rat(0));
    for (int j = 0; j < n_struct; ++j)
        res.x[j] = ph2.state[j] == 0 ? lo[j] : (ph2.state[j] == 1 ? hi[j] : Rat(0));
    for (int i = 0; i < m; ++i)
        if (ph2.basis[i] < n_struct) res.x[ph2.basis[i]] = ph2.xb[i];
    res.objective = Rat(0);
    for (int j = 0; j < n_struct; ++j)
        if (p.c[j] != 0) res.objective += p.c[j] * res.x[j];
    return res;
}

}  // namespace gf
