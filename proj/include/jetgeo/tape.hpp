#pragma once

// Compiled evaluation of many expressions over many points.
//
// A Tape flattens a set of root expressions into a DAG of variable loads,
// function calls and polynomial nodes (atoms shared by pointer are evaluated
// once per point). evaluate_batch runs the tape over a row-major point matrix,
// either serially or with an OpenMP parallel loop over points; the two paths
// produce bit-identical results.

#include <cstdint>
#include <unordered_map>
#include <span>
#include <string>
#include <vector>

#include "jetgeo/expr.hpp"

namespace jetgeo {

enum class Exec { Serial, Parallel };

class Tape {
 public:
  // Variables are taken in sorted order of the union of free variables.
  explicit Tape(std::span<const Expr> roots);
  Tape(std::span<const Expr> roots, std::vector<std::string> variables);

  const std::vector<std::string>& variables() const noexcept { return vars_; }
  std::size_t num_roots() const noexcept { return roots_.size(); }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }

  // Evaluates all roots at x (one value per variable). Returns false when the
  // point hits a singularity; values/scales are then unspecified.
  // scratch must hold 2 * num_nodes() doubles.
  bool eval_point(const double* x, double* values, double* scales,
                  double* scratch) const noexcept;

 private:
  struct Node {
    enum class Op : std::uint8_t { Var, Call, Poly } op;
    Func fn = Func::Sin;
    std::uint32_t arg = 0;  // Var: slot; Call: node of argument
    std::uint32_t term_begin = 0;
    std::uint32_t term_end = 0;
  };
  struct TapeTerm {
    double coeff;
    std::uint32_t factor_begin;
    std::uint32_t factor_end;
  };
  struct TapeFactor {
    std::uint32_t node;
    int exp;
  };

  std::uint32_t compile_expr(const Expr& e);
  std::uint32_t compile_atom(const Atom& a);

  std::vector<std::string> vars_;
  std::vector<Node> nodes_;
  std::vector<TapeTerm> terms_;
  std::vector<TapeFactor> factors_;
  std::vector<std::uint32_t> roots_;
  std::unordered_map<const AtomNode*, std::uint32_t> atom_cache_;
};

struct BatchResult {
  std::size_t points = 0;
  std::size_t roots = 0;
  std::vector<double> values;  // points x roots
  std::vector<double> scales;  // points x roots
  std::vector<std::uint8_t> ok;  // per point
};

// points holds npoints rows of tape.variables().size() values each.
BatchResult evaluate_batch(const Tape& tape, std::span<const double> points,
                           std::size_t npoints, Exec exec);

// Worker count OpenMP would use for Exec::Parallel (1 without OpenMP).
int parallel_workers() noexcept;

}  // namespace jetgeo
