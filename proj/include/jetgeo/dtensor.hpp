#pragma once

// d-tensor fields: dense component arrays over an index signature, and the
// three covariant derivatives _/1, _|p and |_(p)^(1) of a Gamma-linear
// connection.

#include <initializer_list>
#include <span>
#include <vector>

#include "jetgeo/frames.hpp"
#include "jetgeo/geometry.hpp"

namespace jetgeo {

enum class Variance : std::uint8_t { Up, Down };

struct IndexSlot {
  Kind kind = Kind::Space;
  Variance variance = Variance::Up;

  friend bool operator==(const IndexSlot&, const IndexSlot&) = default;
};

using Signature = std::vector<IndexSlot>;

inline constexpr IndexSlot kUpTime{Kind::Time, Variance::Up};
inline constexpr IndexSlot kDownTime{Kind::Time, Variance::Down};
inline constexpr IndexSlot kUpSpace{Kind::Space, Variance::Up};
inline constexpr IndexSlot kDownSpace{Kind::Space, Variance::Down};
inline constexpr IndexSlot kUpVert{Kind::Vert, Variance::Up};
inline constexpr IndexSlot kDownVert{Kind::Vert, Variance::Down};

// Time slots have extent 1, the others extent n.
inline int slot_extent(Kind k, int n) noexcept { return k == Kind::Time ? 1 : n; }

// Components are stored row-major, the last slot varying fastest.
class DTensor {
 public:
  DTensor(int n, Signature sig);
  // Throws ShapeMismatch when components.size() does not match.
  DTensor(int n, Signature sig, std::vector<Expr> components);
  static DTensor scalar(int n, Expr value);

  int n() const noexcept { return n_; }
  std::size_t rank() const noexcept { return sig_.size(); }
  const Signature& signature() const noexcept { return sig_; }
  int extent(std::size_t axis) const { return slot_extent(sig_.at(axis).kind, n_); }
  std::size_t size() const noexcept { return comps_.size(); }

  const std::vector<Expr>& components() const noexcept { return comps_; }
  std::vector<Expr>& components() noexcept { return comps_; }

  // Throws IndexOutOfRange on a wrong index count or value.
  std::size_t offset(std::span<const int> idx) const;
  std::vector<int> multi_index(std::size_t flat) const;

  const Expr& at(std::span<const int> idx) const { return comps_[offset(idx)]; }
  Expr& at(std::span<const int> idx) { return comps_[offset(idx)]; }
  const Expr& operator()(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  Expr& operator()(std::initializer_list<int> idx) {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }

  bool is_literal_zero() const noexcept;

 private:
  int n_;
  Signature sig_;
  std::vector<Expr> comps_;
};

struct DVector {
  Expr X1;
  Vec Xi;
  Vec Xv;
};

// The d-tensors X^1 (time up), X^i (space up), X_(1)^(i) (vertical up).
struct DVectorParts {
  DTensor time;
  DTensor space;
  DTensor vert;
};
DVectorParts split(const DVector& X, int n);

// C_(1)^(i) = y1_i.
DTensor liouville(const JetSpace& space);

// Correction coefficient for a slot of the given kind, with upper index a and
// lower index b, along frame direction op: Gbar/Lbar_p/Cbar_p for time slots,
// G^a_b1/L^a_bp/C^a_b(p) for space slots and the vertical blocks Gv/Lv/Cv.
const Expr& connection_coefficient(const GammaConnection& conn, Kind slot, FrameOp op, int a,
                                   int b);

// Covariant derivative along one adapted direction; the signature is kept
// (the derivative index is fixed by op).
DTensor cov(const DTensor& T, FrameOp op, const GammaConnection& conn);
DTensor cov_time(const DTensor& T, const GammaConnection& conn);
DTensor cov_space(const DTensor& T, int p, const GammaConnection& conn);
DTensor cov_vert(const DTensor& T, int p, const GammaConnection& conn);

// All derivatives of one kind at once; a down slot of that kind is appended
// last, so repeated application yields second covariant derivatives whose
// corrections include the appended slot.
DTensor cov_full(const DTensor& T, Kind k, const GammaConnection& conn);

DTensor tensor_product(const DTensor& A, const DTensor& B);
// Throw SignatureMismatch unless signatures and dimensions agree.
DTensor dtensor_add(const DTensor& A, const DTensor& B);
DTensor dtensor_sub(const DTensor& A, const DTensor& B);
DTensor dtensor_scale(const DTensor& A, const Expr& c);

}  // namespace jetgeo
