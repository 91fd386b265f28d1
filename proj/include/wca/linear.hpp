// Linear systems over a semiring instance, written x * A = b: x is a row
// vector of unknowns, rows of A belong to unknowns and columns to
// constraints, coefficients multiply from the left.

#ifndef WCA_LINEAR_HPP
#define WCA_LINEAR_HPP

#include "wca/budget.hpp"
#include "wca/semiring.hpp"
#include "wca/value.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wca {

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Value& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Value& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Value& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Value> data_;
};

struct LinearSystem {
  const Semiring* sr = nullptr;
  Matrix coeff;               // unknowns x constraints
  std::vector<Value> target;  // one entry per constraint

  std::size_t unknowns() const { return coeff.rows(); }
  std::size_t constraints() const { return target.size(); }
};

struct SolveStats {
  std::uint64_t eliminations = 0;  // pivot eliminations performed
  std::uint64_t lift_steps = 0;    // Hensel lift levels entered
  std::uint64_t assignments = 0;   // free-variable assignments enumerated
};

struct SolveOutcome {
  enum class Status { Solution, NoSolution, BudgetExhausted };
  Status status = Status::NoSolution;
  std::vector<Value> witness;  // valid iff status == Solution
  SolveStats stats;

  static SolveOutcome solution(std::vector<Value> w, SolveStats s = {}) {
    return {Status::Solution, std::move(w), s};
  }
  static SolveOutcome none(SolveStats s = {}) {
    return {Status::NoSolution, {}, s};
  }
  static SolveOutcome budget(SolveStats s = {}) {
    return {Status::BudgetExhausted, {}, s};
  }
};

// Gaussian elimination over a field instance. Pivots take the first row
// holding a nonzero entry in unknown order; unknowns without a pivot are
// fixed to zero, which makes the witness deterministic.
SolveOutcome solve_field(const LinearSystem& sys);

// Solver over Z_q for composite or prime q: factor q, row-reduce mod each
// prime, Hensel-lift level by level enumerating free variables in ascending
// representative order, recombine by CRT. The returned witness is then
// normalized to the lexicographically least solution vector. NoSolution is a
// proof; BudgetExhausted only says the assignment budget ran out first.
SolveOutcome solve_zq(const LinearSystem& sys, std::uint64_t q,
                      const SolveLimits& limits = {});

// Residuation solver for instances with has_residuation: the candidate
// x_i = meet_j  A(i,j) \ b(j)  is the greatest solution whenever any
// solution exists, so a single verification decides the system.
SolveOutcome solve_residuation(const LinearSystem& sys);

// Span membership: is target a left-linear combination of the given vectors?
// Builds x * A = target with one row per vector and asks the instance's
// solver. The empty list spans exactly the zero vector.
SolveOutcome in_span(const std::vector<std::vector<Value>>& vectors,
                     const std::vector<Value>& target, const Semiring& sr,
                     const SolveLimits& limits = {});

}  // namespace wca

#endif
