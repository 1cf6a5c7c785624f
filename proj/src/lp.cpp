#include "backhaul/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "backhaul/error.hpp"

namespace backhaul::lp {

int LinearProgram::add_variable(std::string name, double objective_coeff, double lower, double upper) {
  objective.push_back(objective_coeff);
  bounds.push_back({lower, upper});
  names.push_back(std::move(name));
  for (auto& c : constraints) c.coeffs.push_back(0.0);
  return num_vars++;
}

void LinearProgram::add_constraint(std::vector<double> coeffs, Relation relation, double rhs, std::string name) {
  coeffs.resize(static_cast<std::size_t>(num_vars), 0.0);
  constraints.push_back({std::move(coeffs), relation, rhs, std::move(name)});
}

std::string LinearProgram::variable_name(int j) const {
  if (j >= 0 && static_cast<std::size_t>(j) < names.size() && !names[j].empty()) return names[j];
  return "x" + std::to_string(j);
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

void check_dimensions(const LinearProgram& p) {
  const auto n = static_cast<std::size_t>(p.num_vars);
  if (p.num_vars < 0 || p.objective.size() != n || p.bounds.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "objective/bounds length differs from num_vars");
  for (const auto& c : p.constraints)
    if (c.coeffs.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "constraint '" + c.name + "' has wrong length");
  for (const auto& b : p.bounds)
    if (!std::isfinite(b.lower) || std::isnan(b.upper))
      throw Error(ErrorCode::DimensionMismatch, "variable lower bounds must be finite");
}

// Dense tableau in canonical form with respect to `basis`. The last column
// holds the right-hand side; `cost` is the reduced-cost row d_j = c_j - c_B T_j
// whose last entry is minus the current objective value.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * (cols + 1), 0.0),
                                basis_(static_cast<std::size_t>(rows), -1), cost_(static_cast<std::size_t>(cols) + 1, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * (cols_ + 1) + j]; }
  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * (cols_ + 1) + j]; }
  double& rhs(int i) { return at(i, cols_); }
  double rhs(int i) const { return at(i, cols_); }
  std::vector<int>& basis() { return basis_; }
  std::vector<double>& cost() { return cost_; }
  double value() const { return -cost_[cols_]; }

  void set_objective(const std::vector<double>& c) {
    for (int j = 0; j <= cols_; ++j) {
      double v = j < cols_ ? c[j] : 0.0;
      for (int i = 0; i < rows_; ++i) v -= c[basis_[i]] * at(i, j);
      cost_[j] = v;
    }
  }

  void pivot(int r, int c) {
    const double inv = 1.0 / at(r, c);
    for (int j = 0; j <= cols_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) {
        double& v = at(i, j);
        v -= f * at(r, j);
        if (std::fabs(v) < 1e-14) v = 0.0;
      }
      at(i, c) = 0.0;
    }
    const double f = cost_[c];
    if (f != 0.0) {
      for (int j = 0; j <= cols_; ++j) cost_[j] -= f * at(r, j);
      cost_[c] = 0.0;
    }
    basis_[r] = c;
  }

  void drop_row(int r) {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(r) * (cols_ + 1);
    data_.erase(first, first + cols_ + 1);
    basis_.erase(basis_.begin() + r);
    --rows_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
  std::vector<int> basis_;
  std::vector<double> cost_;
};

enum class PhaseResult { Optimal, Unbounded };

// Bland's rule: lowest-index improving column enters, ratio ties leave by
// lowest basic index.
PhaseResult run_phase(Tableau& t, const std::vector<bool>& enterable, const SolverOptions& opt, int& pivots) {
  for (;;) {
    int enter = -1;
    for (int j = 0; j < t.cols(); ++j) {
      if (enterable[j] && t.cost()[j] > opt.optimality_tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return PhaseResult::Optimal;

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = t.rhs(i) / a;
      if (leave < 0) {
        leave = i;
        best = ratio;
        continue;
      }
      const double eps = 1e-12 * std::max(1.0, std::fabs(best));
      if (ratio < best - eps) {
        leave = i;
        best = ratio;
      } else if (ratio <= best + eps && t.basis()[i] < t.basis()[leave]) {
        leave = i;
        best = std::min(best, ratio);
      }
    }
    if (leave < 0) return PhaseResult::Unbounded;

    if (++pivots > opt.max_pivots)
      throw Error(ErrorCode::IterationLimit, "simplex exceeded " + std::to_string(opt.max_pivots) + " pivots");
    t.pivot(leave, enter);
    if (t.rhs(leave) < 0.0 && t.rhs(leave) > -1e-12) t.rhs(leave) = 0.0;
  }
}

}  // namespace

LpSolution solve(const LinearProgram& program, const SolverOptions& opt) {
  check_dimensions(program);
  const int n = program.num_vars;
  LpSolution out;

  for (const auto& b : program.bounds) {
    if (b.upper < b.lower - opt.feasibility_tol) return out;  // Infeasible
  }

  // Rows over the shifted variables y = x - lower, y >= 0, plus finite upper
  // bounds as explicit rows.
  struct Row {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<Row> rows;
  rows.reserve(program.constraints.size() + static_cast<std::size_t>(n));
  for (const auto& c : program.constraints) {
    double b = c.rhs;
    for (int j = 0; j < n; ++j) b -= c.coeffs[j] * program.bounds[j].lower;
    rows.push_back({c.coeffs, c.relation, b});
  }
  for (int j = 0; j < n; ++j) {
    const auto& bd = program.bounds[j];
    if (std::isinf(bd.upper)) continue;
    std::vector<double> a(static_cast<std::size_t>(n), 0.0);
    a[j] = 1.0;
    rows.push_back({std::move(a), Relation::Le, std::max(0.0, bd.upper - bd.lower)});
  }
  for (auto& r : rows) {
    if (r.b < 0.0) {
      for (auto& v : r.a) v = -v;
      r.b = -r.b;
      if (r.rel == Relation::Le)
        r.rel = Relation::Ge;
      else if (r.rel == Relation::Ge)
        r.rel = Relation::Le;
    }
  }

  const int m = static_cast<int>(rows.size());
  int num_slack = 0;
  int num_art = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::Eq) ++num_slack;
    if (r.rel != Relation::Le) ++num_art;
  }
  const int art_begin = n + num_slack;
  const int cols = art_begin + num_art;

  Tableau t(m, cols);
  double rhs_scale = 1.0;
  {
    int s = n;
    int a = art_begin;
    for (int i = 0; i < m; ++i) {
      const auto& r = rows[i];
      for (int j = 0; j < n; ++j) t.at(i, j) = r.a[j];
      t.rhs(i) = r.b;
      rhs_scale = std::max(rhs_scale, std::fabs(r.b));
      switch (r.rel) {
        case Relation::Le:
          t.at(i, s) = 1.0;
          t.basis()[i] = s++;
          break;
        case Relation::Ge:
          t.at(i, s++) = -1.0;
          t.at(i, a) = 1.0;
          t.basis()[i] = a++;
          break;
        case Relation::Eq:
          t.at(i, a) = 1.0;
          t.basis()[i] = a++;
          break;
      }
    }
  }

  std::vector<bool> enterable(static_cast<std::size_t>(cols), true);
  int pivots = 0;

  if (num_art > 0) {
    std::vector<double> phase1(static_cast<std::size_t>(cols), 0.0);
    for (int j = art_begin; j < cols; ++j) phase1[j] = -1.0;
    t.set_objective(phase1);
    run_phase(t, enterable, opt, pivots);
    if (t.value() < -opt.feasibility_tol * rhs_scale) {
      out.pivots = pivots;
      return out;  // Infeasible
    }
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linearly dependent and are dropped.
    for (int i = t.rows() - 1; i >= 0; --i) {
      if (t.basis()[i] < art_begin) continue;
      int col = -1;
      for (int j = 0; j < art_begin; ++j) {
        if (std::fabs(t.at(i, j)) > opt.pivot_tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        t.pivot(i, col);
        ++pivots;
      } else {
        t.drop_row(i);
      }
    }
    for (int j = art_begin; j < cols; ++j) enterable[j] = false;
  }

  std::vector<double> phase2(static_cast<std::size_t>(cols), 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = program.objective[j];
  t.set_objective(phase2);
  const auto result = run_phase(t, enterable, opt, pivots);
  out.pivots = pivots;
  if (result == PhaseResult::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.assignment.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < t.rows(); ++i)
    if (t.basis()[i] < n) out.assignment[t.basis()[i]] = std::max(0.0, t.rhs(i));
  for (int j = 0; j < n; ++j) {
    const auto& bd = program.bounds[j];
    double x = bd.lower + out.assignment[j];
    if (!std::isinf(bd.upper)) x = std::min(x, bd.upper);
    out.assignment[j] = x;
  }
  out.objective_value = 0.0;
  for (int j = 0; j < n; ++j) out.objective_value += program.objective[j] * out.assignment[j];
  return out;
}

double max_violation(const LinearProgram& program, std::span<const double> x) {
  double worst = 0.0;
  for (int j = 0; j < program.num_vars; ++j) {
    worst = std::max(worst, program.bounds[j].lower - x[j]);
    if (!std::isinf(program.bounds[j].upper)) worst = std::max(worst, x[j] - program.bounds[j].upper);
  }
  for (const auto& c : program.constraints) {
    double lhs = 0.0;
    for (int j = 0; j < program.num_vars; ++j) lhs += c.coeffs[j] * x[j];
    switch (c.relation) {
      case Relation::Le: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::Ge: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::Eq: worst = std::max(worst, std::fabs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

std::string to_text(const LinearProgram& p) {
  std::ostringstream os;
  os.precision(17);
  auto write_sum = [&](const std::vector<double>& coeffs) {
    bool first = true;
    for (int j = 0; j < p.num_vars; ++j) {
      const double v = coeffs[j];
      if (v == 0.0) continue;
      if (!first || v < 0.0) os << (v < 0.0 ? " - " : " + ");
      os << std::fabs(v) << ' ' << p.variable_name(j);
      first = false;
    }
    if (first) os << '0';
  };
  os << "maximize\n  obj: ";
  write_sum(p.objective);
  os << "\nsubject to\n";
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    os << "  " << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ": ";
    write_sum(c.coeffs);
    os << (c.relation == Relation::Le ? " <= " : c.relation == Relation::Ge ? " >= " : " = ") << c.rhs << '\n';
  }
  os << "bounds\n";
  for (int j = 0; j < p.num_vars; ++j) {
    os << "  " << p.bounds[j].lower << " <= " << p.variable_name(j);
    if (!std::isinf(p.bounds[j].upper)) os << " <= " << p.bounds[j].upper;
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

}  // namespace backhaul::lp
