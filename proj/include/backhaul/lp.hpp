#pragma once

// Small dense linear programs: maximize c.x subject to row constraints and
// finite lower / optional upper variable bounds.

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace backhaul::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { Le, Ge, Eq };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation = Relation::Le;
  double rhs = 0.0;
  std::string name;
};

struct Bounds {
  double lower = 0.0;
  double upper = kInfinity;
};

struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;  // maximized
  std::vector<Constraint> constraints;
  std::vector<Bounds> bounds;
  std::vector<std::string> names;

  // Returns the new variable's index; existing constraints are widened.
  int add_variable(std::string name, double objective_coeff = 0.0, double lower = 0.0,
                   double upper = kInfinity);
  void add_constraint(std::vector<double> coeffs, Relation relation, double rhs, std::string name = {});

  std::string variable_name(int j) const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective_value = 0.0;
  std::vector<double> assignment;  // empty unless Optimal
  int pivots = 0;
};

struct SolverOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  int max_pivots = 100000;
};

// Two-phase tableau simplex with Bland's rule on both phases.
// Throws Error(DimensionMismatch) on malformed input and Error(IterationLimit)
// if max_pivots is exceeded.
LpSolution solve(const LinearProgram& program, const SolverOptions& options = {});

// Largest violation of any row or bound by `x` (0 when feasible).
double max_violation(const LinearProgram& program, std::span<const double> x);

// Plain-text standard form for debugging.
std::string to_text(const LinearProgram& program);

}  // namespace backhaul::lp
