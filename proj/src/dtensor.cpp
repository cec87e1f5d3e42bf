#include "jetgeo/dtensor.hpp"

#include "jetgeo/error.hpp"

namespace jetgeo {

namespace {

std::size_t total_size(const Signature& sig, int n) {
  std::size_t s = 1;
  for (const auto& slot : sig) s *= static_cast<std::size_t>(slot_extent(slot.kind, n));
  return s;
}

void check_index(int p, int n) {
  if (p < 0 || p >= n)
    throw IndexOutOfRange("index " + std::to_string(p + 1) + " outside 1.." + std::to_string(n));
}

}  // namespace

DTensor::DTensor(int n, Signature sig) : n_(n), sig_(std::move(sig)) {
  comps_.resize(total_size(sig_, n_));
}

DTensor::DTensor(int n, Signature sig, std::vector<Expr> components)
    : n_(n), sig_(std::move(sig)), comps_(std::move(components)) {
  if (comps_.size() != total_size(sig_, n_))
    throw ShapeMismatch("component count " + std::to_string(comps_.size()) +
                        " does not match the signature");
}

DTensor DTensor::scalar(int n, Expr value) { return DTensor(n, {}, {std::move(value)}); }

std::size_t DTensor::offset(std::span<const int> idx) const {
  if (idx.size() != sig_.size())
    throw IndexOutOfRange("expected " + std::to_string(sig_.size()) + " indices");
  std::size_t off = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    int e = extent(a);
    if (idx[a] < 0 || idx[a] >= e)
      throw IndexOutOfRange("index " + std::to_string(idx[a] + 1) + " outside 1.." +
                            std::to_string(e));
    off = off * static_cast<std::size_t>(e) + static_cast<std::size_t>(idx[a]);
  }
  return off;
}

std::vector<int> DTensor::multi_index(std::size_t flat) const {
  std::vector<int> idx(sig_.size());
  for (std::size_t a = sig_.size(); a-- > 0;) {
    auto e = static_cast<std::size_t>(extent(a));
    idx[a] = static_cast<int>(flat % e);
    flat /= e;
  }
  return idx;
}

bool DTensor::is_literal_zero() const noexcept {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

DVectorParts split(const DVector& X, int n) {
  return DVectorParts{DTensor(n, {kUpTime}, {X.X1}), DTensor(n, {kUpSpace}, X.Xi),
                      DTensor(n, {kUpVert}, X.Xv)};
}

DTensor liouville(const JetSpace& space) {
  std::vector<Expr> c;
  for (int i = 0; i < space.n(); ++i) c.push_back(space.y(i));
  return DTensor(space.n(), {kUpVert}, std::move(c));
}

const Expr& connection_coefficient(const GammaConnection& conn, Kind slot, FrameOp op, int a,
                                   int b) {
  const int p = op.index;
  switch (slot) {
    case Kind::Time:
      switch (op.kind) {
        case Kind::Time: return conn.Gbar;
        case Kind::Space: return conn.Lbar[p];
        case Kind::Vert: return conn.Cbar[p];
      }
      break;
    case Kind::Space:
      switch (op.kind) {
        case Kind::Time: return conn.G[a][b];
        case Kind::Space: return conn.L[a][b][p];
        case Kind::Vert: return conn.C[a][b][p];
      }
      break;
    case Kind::Vert:
      switch (op.kind) {
        case Kind::Time: return conn.Gv[a][b];
        case Kind::Space: return conn.Lv[a][b][p];
        case Kind::Vert: return conn.Cv[a][b][p];
      }
      break;
  }
  throw InternalInconsistency("bad slot kind");
}

DTensor cov(const DTensor& T, FrameOp op, const GammaConnection& conn) {
  const int n = conn.n();
  if (T.n() != n) throw SignatureMismatch("tensor and connection dimensions differ");
  if (op.kind != Kind::Time) check_index(op.index, n);
  DTensor out(n, T.signature());
  const Signature& sig = T.signature();
  std::vector<int> J;
  for (std::size_t f = 0; f < T.size(); ++f) {
    std::vector<int> I = T.multi_index(f);
    Expr v = apply_frame(conn.nlc, op, T.components()[f]);
    for (std::size_t s = 0; s < sig.size(); ++s) {
      const Kind k = sig[s].kind;
      const int a = I[s];
      J = I;
      for (int b = 0; b < slot_extent(k, n); ++b) {
        J[s] = b;
        const Expr& comp = T.at(J);
        if (comp.is_zero()) continue;
        if (sig[s].variance == Variance::Up) {
          const Expr& g = connection_coefficient(conn, k, op, a, b);
          if (!g.is_zero()) v += comp * g;
        } else {
          const Expr& g = connection_coefficient(conn, k, op, b, a);
          if (!g.is_zero()) v -= comp * g;
        }
      }
    }
    out.components()[f] = std::move(v);
  }
  return out;
}

DTensor cov_time(const DTensor& T, const GammaConnection& conn) {
  return cov(T, FrameOp::time(), conn);
}

DTensor cov_space(const DTensor& T, int p, const GammaConnection& conn) {
  check_index(p, conn.n());
  return cov(T, FrameOp::space(p), conn);
}

DTensor cov_vert(const DTensor& T, int p, const GammaConnection& conn) {
  check_index(p, conn.n());
  return cov(T, FrameOp::vert(p), conn);
}

DTensor cov_full(const DTensor& T, Kind k, const GammaConnection& conn) {
  const int n = conn.n();
  const int ext = slot_extent(k, n);
  Signature sig = T.signature();
  sig.push_back({k, Variance::Down});
  DTensor out(n, sig);
  for (int p = 0; p < ext; ++p) {
    DTensor d = cov(T, FrameOp{k, p}, conn);
    for (std::size_t f = 0; f < d.size(); ++f)
      out.components()[f * static_cast<std::size_t>(ext) + static_cast<std::size_t>(p)] =
          d.components()[f];
  }
  return out;
}

DTensor tensor_product(const DTensor& A, const DTensor& B) {
  if (A.n() != B.n()) throw SignatureMismatch("tensor dimensions differ");
  Signature sig = A.signature();
  sig.insert(sig.end(), B.signature().begin(), B.signature().end());
  std::vector<Expr> c;
  c.reserve(A.size() * B.size());
  for (const auto& a : A.components())
    for (const auto& b : B.components()) c.push_back(a * b);
  return DTensor(A.n(), std::move(sig), std::move(c));
}

DTensor dtensor_add(const DTensor& A, const DTensor& B) {
  if (A.n() != B.n() || A.signature() != B.signature())
    throw SignatureMismatch("cannot add d-tensors with different signatures");
  DTensor out = A;
  for (std::size_t f = 0; f < out.size(); ++f) out.components()[f] += B.components()[f];
  return out;
}

DTensor dtensor_sub(const DTensor& A, const DTensor& B) {
  if (A.n() != B.n() || A.signature() != B.signature())
    throw SignatureMismatch("cannot subtract d-tensors with different signatures");
  DTensor out = A;
  for (std::size_t f = 0; f < out.size(); ++f) out.components()[f] -= B.components()[f];
  return out;
}

DTensor dtensor_scale(const DTensor& A, const Expr& c) {
  DTensor out = A;
  for (auto& e : out.components()) e *= c;
  return out;
}

}  // namespace jetgeo
