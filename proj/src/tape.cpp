#include "jetgeo/tape.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "jetgeo/error.hpp"

namespace jetgeo {

namespace {

// Non-throwing counterpart of apply_func; NaN marks a singularity.
double func_value(Func f, double u) noexcept {
  switch (f) {
    case Func::Sin:
      return std::sin(u);
    case Func::Cos:
      return std::cos(u);
    case Func::Tan:
      return std::cos(u) == 0.0 ? NAN : std::tan(u);
    case Func::Exp:
      return std::exp(u);
    case Func::Log:
      return u > 0.0 ? std::log(u) : NAN;
    case Func::Sqrt:
      return u >= 0.0 ? std::sqrt(u) : NAN;
    case Func::Sinh:
      return std::sinh(u);
    case Func::Cosh:
      return std::cosh(u);
  }
  return NAN;
}

double ipow(double b, int e) noexcept {
  if (e < 0) return b == 0.0 ? NAN : 1.0 / ipow(b, -e);
  double out = 1.0;
  unsigned k = static_cast<unsigned>(e);
  while (k > 0) {
    if (k & 1U) out *= b;
    k >>= 1U;
    if (k > 0) b *= b;
  }
  return out;
}

}  // namespace

Tape::Tape(std::span<const Expr> roots) {
  std::vector<std::string> vars;
  for (const auto& r : roots) {
    auto fv = r.free_variables();
    std::vector<std::string> merged;
    std::set_union(vars.begin(), vars.end(), fv.begin(), fv.end(),
                   std::back_inserter(merged));
    vars = std::move(merged);
  }
  *this = Tape(roots, std::move(vars));
}

Tape::Tape(std::span<const Expr> roots, std::vector<std::string> variables)
    : vars_(std::move(variables)) {
  for (const auto& r : roots) roots_.push_back(compile_expr(r));
  atom_cache_.clear();
}

std::uint32_t Tape::compile_atom(const Atom& a) {
  if (auto it = atom_cache_.find(a.get()); it != atom_cache_.end())
    return it->second;
  Node n{};
  switch (a->kind) {
    case AtomNode::Kind::Variable: {
      auto it = std::find(vars_.begin(), vars_.end(), a->name);
      if (it == vars_.end())
        throw UnboundVariable("tape has no slot for '" + a->name + "'");
      n.op = Node::Op::Var;
      n.arg = static_cast<std::uint32_t>(it - vars_.begin());
      nodes_.push_back(n);
      break;
    }
    case AtomNode::Kind::Call: {
      std::uint32_t arg = compile_expr(a->arg);
      n.op = Node::Op::Call;
      n.fn = a->fn;
      n.arg = arg;
      nodes_.push_back(n);
      break;
    }
    case AtomNode::Kind::SumBase: {
      std::uint32_t idx = compile_expr(a->arg);
      atom_cache_.emplace(a.get(), idx);
      return idx;
    }
  }
  auto idx = static_cast<std::uint32_t>(nodes_.size() - 1);
  atom_cache_.emplace(a.get(), idx);
  return idx;
}

std::uint32_t Tape::compile_expr(const Expr& e) {
  // Children first so nodes stay in topological order.
  std::vector<std::vector<TapeFactor>> per_term;
  per_term.reserve(e.terms().size());
  for (const auto& t : e.terms()) {
    std::vector<TapeFactor> fs;
    for (const auto& f : t.factors) fs.push_back({compile_atom(f.base), f.exp});
    per_term.push_back(std::move(fs));
  }
  Node n{};
  n.op = Node::Op::Poly;
  n.term_begin = static_cast<std::uint32_t>(terms_.size());
  for (std::size_t i = 0; i < per_term.size(); ++i) {
    TapeTerm tt{e.terms()[i].coeff.to_double(),
                static_cast<std::uint32_t>(factors_.size()), 0};
    for (const auto& f : per_term[i]) factors_.push_back(f);
    tt.factor_end = static_cast<std::uint32_t>(factors_.size());
    terms_.push_back(tt);
  }
  n.term_end = static_cast<std::uint32_t>(terms_.size());
  nodes_.push_back(n);
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

bool Tape::eval_point(const double* x, double* values, double* scales,
                      double* scratch) const noexcept {
  double* val = scratch;
  double* scl = scratch + nodes_.size();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    double v = 0.0;
    double s = 0.0;
    switch (n.op) {
      case Node::Op::Var:
        v = x[n.arg];
        s = std::abs(v);
        break;
      case Node::Op::Call:
        v = func_value(n.fn, val[n.arg]);
        s = std::max(scl[n.arg], std::abs(v));
        break;
      case Node::Op::Poly:
        for (std::uint32_t t = n.term_begin; t < n.term_end; ++t) {
          const TapeTerm& tt = terms_[t];
          double term = tt.coeff;
          for (std::uint32_t f = tt.factor_begin; f < tt.factor_end; ++f) {
            const TapeFactor& tf = factors_[f];
            term *= ipow(val[tf.node], tf.exp);
            s = std::max(s, scl[tf.node]);
          }
          s = std::max(s, std::abs(term));
          v += term;
        }
        s = std::max(s, std::abs(v));
        break;
    }
    if (!std::isfinite(v)) return false;
    val[i] = v;
    scl[i] = s;
  }
  for (std::size_t r = 0; r < roots_.size(); ++r) {
    values[r] = val[roots_[r]];
    scales[r] = scl[roots_[r]];
  }
  return true;
}

BatchResult evaluate_batch(const Tape& tape, std::span<const double> points,
                           std::size_t npoints_in, Exec exec) {
  BatchResult out;
  const std::size_t dim = tape.variables().size();
  out.roots = tape.num_roots();
  out.points = npoints_in;
  if (points.size() < npoints_in * dim)
    throw InternalInconsistency("point matrix smaller than npoints * dim");
  out.values.assign(out.points * out.roots, 0.0);
  out.scales.assign(out.points * out.roots, 0.0);
  out.ok.assign(out.points, 0);
  const auto npoints = static_cast<std::ptrdiff_t>(out.points);
  const std::size_t scratch_size = 2 * tape.num_nodes();

  if (exec == Exec::Serial) {
    std::vector<double> scratch(scratch_size);
    for (std::ptrdiff_t p = 0; p < npoints; ++p) {
      const auto up = static_cast<std::size_t>(p);
      out.ok[up] = tape.eval_point(points.data() + up * dim,
                                   out.values.data() + up * out.roots,
                                   out.scales.data() + up * out.roots,
                                   scratch.data());
    }
    return out;
  }

#pragma omp parallel
  {
    std::vector<double> scratch(scratch_size);
#pragma omp for schedule(static)
    for (std::ptrdiff_t p = 0; p < npoints; ++p) {
      const auto up = static_cast<std::size_t>(p);
      out.ok[up] = tape.eval_point(points.data() + up * dim,
                                   out.values.data() + up * out.roots,
                                   out.scales.data() + up * out.roots,
                                   scratch.data());
    }
  }
  return out;
}

int parallel_workers() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace jetgeo
