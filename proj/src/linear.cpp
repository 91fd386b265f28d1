#include "wca/linear.hpp"

#include "wca/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>

namespace wca {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 submod(u64 a, u64 b, u64 m) { return (a + m - b) % m; }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 acc = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) acc = mulmod(acc, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return acc;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse mod m for gcd(a, m) = 1.
u64 invmod(u64 a, u64 m) {
  long long old_r = static_cast<long long>(a % m), r = static_cast<long long>(m);
  long long old_s = 1, s = 0;
  while (r != 0) {
    long long d = old_r / r;
    long long t = old_r - d * r;
    old_r = r; r = t;
    t = old_s - d * s;
    old_s = s; s = t;
  }
  long long inv = old_s % static_cast<long long>(m);
  if (inv < 0) inv += static_cast<long long>(m);
  return static_cast<u64>(inv);
}

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL})
    if (n % p == 0) return n == p;
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) { d >>= 1; ++r; }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_rho(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

std::vector<u64> divisors_ascending(const std::map<u64, unsigned>& factors) {
  std::vector<u64> divs{1};
  for (const auto& [p, e] : factors) {
    std::size_t before = divs.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < before; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// ---------------------------------------------------------------------------
// Modular solver: systems x * A = b over Z_{p^e} and Z_q.

struct ZqTracker {
  SolveStats stats;
  u64 assignment_budget;
  const std::atomic<bool>* cancel = nullptr;
  bool budget_hit = false;

  bool spend_assignment() {
    if (cancel && cancel->load(std::memory_order_relaxed)) {
      budget_hit = true;
      return false;
    }
    if (stats.assignments >= assignment_budget) {
      budget_hit = true;
      return false;
    }
    ++stats.assignments;
    return true;
  }
};

// One prime power p^e. Holds the mod-p reduced echelon structure of the
// transposed system, reused for every right-hand side during lifting.
class PrimePowerSolver {
public:
  PrimePowerSolver(const std::vector<std::vector<u64>>& a,
                   const std::vector<u64>& b, u64 p, unsigned e,
                   ZqTracker& track)
      : p_(p), e_(e), track_(track) {
    pe_ = 1;
    for (unsigned i = 0; i < e; ++i) pe_ *= p;
    m_ = a.size();
    n_ = b.size();
    a_.assign(m_, std::vector<u64>(n_));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a_[i][j] = a[i][j] % pe_;
    b_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) b_[j] = b[j] % pe_;
    build_mod_p_structure();
  }

  // First solution found by depth-first lifting, or nullopt. Distinguish an
  // exhausted search from a budget stop through the tracker flag.
  std::optional<std::vector<u64>> solve() {
    std::vector<u64> x(m_, 0);
    return dfs(0, x);
  }

  u64 pe() const { return pe_; }

private:
  void build_mod_p_structure() {
    // Reduced row echelon of C = A^T mod p with a recorded transform U so
    // every later right-hand side is eliminated in O(n^2).
    rref_.assign(n_, std::vector<u64>(m_));
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < m_; ++i) rref_[j][i] = a_[i][j] % p_;
    transform_.assign(n_, std::vector<u64>(n_, 0));
    for (std::size_t j = 0; j < n_; ++j) transform_[j][j] = 1;

    pivot_row_of_col_.assign(m_, -1);
    pivot_col_of_row_.assign(n_, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m_ && rank < n_; ++col) {
      std::size_t pr = rank;
      while (pr < n_ && rref_[pr][col] == 0) ++pr;
      if (pr == n_) continue;
      std::swap(rref_[pr], rref_[rank]);
      std::swap(transform_[pr], transform_[rank]);
      u64 inv = invmod(rref_[rank][col], p_);
      for (auto& v : rref_[rank]) v = mulmod(v, inv, p_);
      for (auto& v : transform_[rank]) v = mulmod(v, inv, p_);
      for (std::size_t r = 0; r < n_; ++r) {
        if (r == rank || rref_[r][col] == 0) continue;
        u64 f = rref_[r][col];
        for (std::size_t i = 0; i < m_; ++i)
          rref_[r][i] = submod(rref_[r][i], mulmod(f, rref_[rank][i], p_), p_);
        for (std::size_t i = 0; i < n_; ++i)
          transform_[r][i] =
              submod(transform_[r][i], mulmod(f, transform_[rank][i], p_), p_);
        ++track_.stats.eliminations;
      }
      pivot_row_of_col_[col] = static_cast<int>(rank);
      pivot_col_of_row_[rank] = static_cast<int>(col);
      ++rank;
    }
    rank_ = rank;

    for (std::size_t col = 0; col < m_; ++col)
      if (pivot_row_of_col_[col] < 0) free_cols_.push_back(col);
    for (std::size_t f : free_cols_) {
      std::vector<u64> v(m_, 0);
      v[f] = 1;
      for (std::size_t row = 0; row < rank_; ++row) {
        int col = pivot_col_of_row_[row];
        v[col] = (p_ - rref_[row][f]) % p_;
      }
      nullbasis_.push_back(std::move(v));
    }
  }

  // Particular solution of y * A = rhs (mod p), free unknowns at zero.
  std::optional<std::vector<u64>> solve_mod_p(const std::vector<u64>& rhs) {
    std::vector<u64> t(n_, 0);
    for (std::size_t r = 0; r < n_; ++r) {
      u128 acc = 0;
      for (std::size_t j = 0; j < n_; ++j)
        acc += u128(transform_[r][j]) * (rhs[j] % p_);
      t[r] = static_cast<u64>(acc % p_);
    }
    for (std::size_t r = rank_; r < n_; ++r)
      if (t[r] != 0) return std::nullopt;
    std::vector<u64> y(m_, 0);
    for (std::size_t r = 0; r < rank_; ++r) y[pivot_col_of_row_[r]] = t[r];
    return y;
  }

  std::optional<std::vector<u64>> dfs(unsigned level, std::vector<u64>& x) {
    if (track_.budget_hit) return std::nullopt;
    if (level == e_) return x;
    if (level > 0) ++track_.stats.lift_steps;

    u64 pk = 1;
    for (unsigned i = 0; i < level; ++i) pk *= p_;

    // Residual of the current partial solution; divisible by p^level.
    std::vector<u64> reduced(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      u64 acc = 0;
      for (std::size_t i = 0; i < m_; ++i)
        acc = (acc + mulmod(x[i], a_[i][j], pe_)) % pe_;
      u64 s = submod(b_[j], acc, pe_);
      assert(s % pk == 0);
      reduced[j] = (s / pk) % p_;
    }

    auto y0 = solve_mod_p(reduced);
    if (!y0) return std::nullopt;

    std::size_t d = free_cols_.size();
    std::vector<u64> t(d, 0);
    for (;;) {
      if (!track_.spend_assignment()) return std::nullopt;
      std::vector<u64> xt = x;
      for (std::size_t i = 0; i < m_; ++i) {
        u64 yi = (*y0)[i];
        for (std::size_t k = 0; k < d; ++k)
          yi = (yi + mulmod(t[k], nullbasis_[k][i], p_)) % p_;
        xt[i] = (xt[i] + mulmod(yi, pk, pe_)) % pe_;
      }
      if (auto res = dfs(level + 1, xt)) return res;
      if (track_.budget_hit) return std::nullopt;

      // Next free-variable assignment in ascending representative order.
      std::size_t idx = d;
      while (idx > 0) {
        --idx;
        if (++t[idx] < p_) break;
        t[idx] = 0;
        if (idx == 0) return std::nullopt;
      }
      if (d == 0) return std::nullopt;
    }
  }

  u64 p_, pe_;
  unsigned e_;
  std::size_t m_, n_, rank_ = 0;
  std::vector<std::vector<u64>> a_;
  std::vector<u64> b_;
  std::vector<std::vector<u64>> rref_, transform_;
  std::vector<int> pivot_row_of_col_, pivot_col_of_row_;
  std::vector<std::size_t> free_cols_;
  std::vector<std::vector<u64>> nullbasis_;
  ZqTracker& track_;
};

enum class ZqStatus { Solution, NoSolution, Budget };

// Any solution of x * A = b over Z_q via per-prime-power lifting plus CRT.
ZqStatus zq_any_solution(const std::vector<std::vector<u64>>& a,
                         const std::vector<u64>& b, u64 q,
                         const std::map<u64, unsigned>& factors,
                         ZqTracker& track, std::vector<u64>* out) {
  std::size_t m = a.size();
  if (m == 0) {
    for (u64 v : b)
      if (v % q != 0) return ZqStatus::NoSolution;
    if (out) out->clear();
    return ZqStatus::Solution;
  }
  std::vector<u64> x(m, 0);
  u64 mod_so_far = 1;
  for (const auto& [p, e] : factors) {
    PrimePowerSolver solver(a, b, p, e, track);
    auto part = solver.solve();
    if (track.budget_hit) return ZqStatus::Budget;
    if (!part) return ZqStatus::NoSolution;
    u64 pe = solver.pe();
    if (mod_so_far == 1) {
      x = *part;
    } else {
      u64 inv = invmod(mod_so_far % pe, pe);
      for (std::size_t i = 0; i < m; ++i) {
        u64 diff = submod((*part)[i] % pe, x[i] % pe, pe);
        x[i] = x[i] + mod_so_far * mulmod(diff, inv, pe);
      }
    }
    mod_so_far *= pe;
  }
  if (out) *out = x;
  return ZqStatus::Solution;
}

// Solvability of the homogeneous system restricted to unknowns >= j with
// unknown j pinned to value d: move d * row_j to the right-hand side.
ZqStatus zq_pinned_solvable(const std::vector<std::vector<u64>>& a, u64 q,
                            const std::map<u64, unsigned>& factors,
                            std::size_t j, u64 d, ZqTracker& track) {
  std::size_t n = a[j].size();
  std::vector<std::vector<u64>> sub(a.begin() + j + 1, a.end());
  std::vector<u64> rhs(n);
  for (std::size_t c = 0; c < n; ++c)
    rhs[c] = submod(0, mulmod(d, a[j][c], q), q);
  return zq_any_solution(sub, rhs, q, factors, track, nullptr);
}

}  // namespace

SolveOutcome solve_field(const LinearSystem& sys) {
  const Semiring& sr = *sys.sr;
  if (!sr.caps().is_field)
    throw CapabilityMismatch("solve_field: instance '" + sr.name() +
                             "' is not a field");
  SolveStats stats;
  std::size_t m = sys.unknowns(), n = sys.constraints();

  // Work on the transposed augmented system: one row per constraint.
  std::vector<std::vector<Value>> t(n, std::vector<Value>(m + 1, sr.zero()));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) t[j][i] = sys.coeff.at(i, j);
    t[j][m] = sys.target[j];
  }

  std::vector<int> pivot_row_of_col(m, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < n; ++col) {
    std::size_t pr = rank;
    while (pr < n && sr.is_zero(t[pr][col])) ++pr;
    if (pr == n) continue;
    std::swap(t[pr], t[rank]);
    Value inv = *sr.inverse(t[rank][col]);
    for (auto& v : t[rank]) v = sr.mul(inv, v);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank || sr.is_zero(t[r][col])) continue;
      Value f = *sr.negate(t[r][col]);
      for (std::size_t i = 0; i <= m; ++i)
        t[r][i] = sr.add(t[r][i], sr.mul(f, t[rank][i]));
      ++stats.eliminations;
    }
    pivot_row_of_col[col] = static_cast<int>(rank);
    ++rank;
  }

  for (std::size_t r = rank; r < n; ++r)
    if (!sr.is_zero(t[r][m])) return SolveOutcome::none(stats);

  // Unknowns without a pivot stay at zero, which pins the witness.
  std::vector<Value> x(m, sr.zero());
  for (std::size_t col = 0; col < m; ++col)
    if (pivot_row_of_col[col] >= 0) x[col] = t[pivot_row_of_col[col]][m];
  return SolveOutcome::solution(std::move(x), stats);
}

SolveOutcome solve_zq(const LinearSystem& sys, std::uint64_t q,
                      const SolveLimits& limits) {
  if (q < 2) throw InvalidModulus("solve_zq: modulus must be at least 2");
  std::size_t m = sys.unknowns(), n = sys.constraints();

  auto to_residue = [q](const Value& v) {
    BigInt r = v.as_int() % q;
    if (r < 0) r += q;
    return r.convert_to<std::uint64_t>();
  };
  std::vector<std::vector<u64>> a(m, std::vector<u64>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = to_residue(sys.coeff.at(i, j));
  std::vector<u64> b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = to_residue(sys.target[j]);

  std::map<u64, unsigned> factors;
  factor_u64(q, factors);

  ZqTracker track;
  track.assignment_budget = limits.assignment_budget;
  track.cancel = limits.cancel;

  std::vector<u64> x;
  ZqStatus st = zq_any_solution(a, b, q, factors, track, &x);
  if (st == ZqStatus::Budget) return SolveOutcome::budget(track.stats);
  if (st == ZqStatus::NoSolution) return SolveOutcome::none(track.stats);

  // Normalize the witness to the lexicographically least solution. The set
  // of values unknown j can take with earlier unknowns fixed is a coset of a
  // cyclic subgroup of Z_q; its generator is the smallest divisor of q
  // attainable as coordinate j of the restricted null module.
  std::vector<u64> divs = divisors_ascending(factors);
  for (std::size_t j = 0; j < m && !track.budget_hit; ++j) {
    if (x[j] == 0) continue;
    u64 g = q;
    for (u64 d : divs) {
      if (d > x[j]) break;  // larger steps cannot lower the value
      ZqStatus hs = zq_pinned_solvable(a, q, factors, j, d, track);
      if (hs == ZqStatus::Budget) break;
      if (hs == ZqStatus::Solution) {
        g = d;
        break;
      }
    }
    if (track.budget_hit || g == q || x[j] % g == x[j]) continue;

    // Re-solve the tail for the lowered coordinate; commit only on success
    // so the witness stays valid when the budget runs out mid-pass.
    u64 lowered = x[j] % g;
    std::vector<std::vector<u64>> sub(a.begin() + j + 1, a.end());
    std::vector<u64> rhs(n);
    for (std::size_t c = 0; c < n; ++c) {
      u64 acc = 0;
      for (std::size_t i = 0; i <= j; ++i) {
        u64 xi = (i == j) ? lowered : x[i];
        acc = (acc + mulmod(xi, a[i][c], q)) % q;
      }
      rhs[c] = submod(b[c], acc, q);
    }
    std::vector<u64> tail;
    ZqStatus ts = zq_any_solution(sub, rhs, q, factors, track, &tail);
    if (ts != ZqStatus::Solution) continue;
    x[j] = lowered;
    for (std::size_t i = j + 1; i < m; ++i) x[i] = tail[i - j - 1];
  }

  std::vector<Value> witness;
  witness.reserve(m);
  for (u64 v : x) witness.push_back(Value(BigInt(v)));
  return SolveOutcome::solution(std::move(witness), track.stats);
}

SolveOutcome solve_residuation(const LinearSystem& sys) {
  const Semiring& sr = *sys.sr;
  if (!sr.caps().has_residuation)
    throw CapabilityMismatch("solve_residuation: instance '" + sr.name() +
                             "' has no residuation");
  SolveStats stats;
  std::size_t m = sys.unknowns(), n = sys.constraints();

  // Greatest-solution candidate: x_i = meet_j A(i,j) \ b(j). If it fails
  // verification no solution exists at all.
  std::vector<Value> x;
  x.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::optional<Value> xi;
    for (std::size_t j = 0; j < n; ++j) {
      auto r = sr.residuum(sys.coeff.at(i, j), sys.target[j]);
      if (!r)
        throw CapabilityMismatch("solve_residuation: residuum unavailable");
      if (!xi) {
        xi = *r;
      } else {
        auto met = sr.meet(*xi, *r);
        if (!met)
          throw CapabilityMismatch("solve_residuation: meet unavailable");
        xi = *met;
      }
    }
    // No constraints: the top element, which is the monoid unit here.
    x.push_back(xi ? *xi : sr.one());
  }

  for (std::size_t j = 0; j < n; ++j) {
    Value acc = sr.zero();
    for (std::size_t i = 0; i < m; ++i)
      acc = sr.add(acc, sr.mul(x[i], sys.coeff.at(i, j)));
    if (!sr.equal(acc, sys.target[j])) return SolveOutcome::none(stats);
  }
  return SolveOutcome::solution(std::move(x), stats);
}

SolveOutcome Semiring::solve_system(const LinearSystem& sys,
                                    const SolveLimits& limits) const {
  switch (solver_kind()) {
    case SolverKind::Field:
      return solve_field(sys);
    case SolverKind::Zq:
      return solve_zq(sys, *modulus(), limits);
    case SolverKind::Residuation:
      return solve_residuation(sys);
    case SolverKind::Componentwise:
      throw Error("componentwise solver must be overridden");
    case SolverKind::None:
      break;
  }
  throw CapabilityMismatch("instance '" + name() + "' has no linear solver");
}

SolveOutcome in_span(const std::vector<std::vector<Value>>& vectors,
                     const std::vector<Value>& target, const Semiring& sr,
                     const SolveLimits& limits) {
  for (const auto& v : vectors)
    if (v.size() != target.size())
      throw Error("in_span: dimension mismatch");
  if (vectors.empty()) {
    for (const auto& t : target)
      if (!sr.is_zero(t)) return SolveOutcome::none();
    return SolveOutcome::solution({});
  }
  LinearSystem sys;
  sys.sr = &sr;
  sys.coeff = Matrix(vectors.size(), target.size(), sr.zero());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < target.size(); ++j)
      sys.coeff.at(i, j) = vectors[i][j];
  sys.target = target;
  return sr.solve_system(sys, limits);
}

}  // namespace wca
