#include "sos/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "sos/errors.hpp"
#include "sos/weights.hpp"
#include "tensor_embed.hpp"

namespace sos {

ChainSpace::ChainSpace(std::size_t n_sites) : n_(n_sites) {
  if (n_sites == 0 || n_sites > 8 * sizeof(std::size_t) - 2)
    throw std::invalid_argument("ChainSpace: unsupported number of sites");
}

int ChainSpace::spin(std::size_t index, std::size_t site) const {
  return ((index >> (n_ - site)) & 1u) ? -1 : 1;
}

int ChainSpace::magnetization(std::size_t index) const {
  int m = 0;
  for (std::size_t s = 1; s <= n_; ++s) m += spin(index, s);
  return m;
}

std::size_t ChainSpace::up_mask(std::size_t index) const {
  std::size_t mask = 0;
  for (std::size_t s = 1; s <= n_; ++s)
    if (spin(index, s) > 0) mask |= std::size_t{1} << (s - 1);
  return mask;
}

std::size_t ChainSpace::index_of_mask(std::size_t up_mask) const {
  std::size_t index = 0;
  for (std::size_t s = 1; s <= n_; ++s)
    if (!((up_mask >> (s - 1)) & 1u)) index |= std::size_t{1} << (n_ - s);
  return index;
}

MonodromyBlocks blocks_of(const AuxChainOperator& t) {
  const std::size_t d = std::size_t{1} << t.n_sites;
  MonodromyBlocks b{CMatrix(d), CMatrix(d), CMatrix(d), CMatrix(d)};
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      b.A(r, c) = t.op(r, c);
      b.B(r, c) = t.op(r, d + c);
      b.C(r, c) = t.op(d + r, c);
      b.D(r, c) = t.op(d + r, d + c);
    }
  }
  return b;
}

namespace {

struct SiteFactor {
  std::size_t site;
  Complex x;
  AuxSide side;
};

/// Rows of a (2*2^N) x width block, row index = aux * 2^N + chain index.
struct RowBlock {
  std::span<Complex> data;
  std::size_t width;
  std::span<Complex> row(std::size_t r) const { return data.subspan(r * width, width); }
};

/// rows <- E * rows for one embedded site R. E only couples rows that
/// differ in the aux bit and the site bit, so the update is pairwise.
void apply_site(const SiteFactor& f, Complex theta, Complex eta, std::size_t n,
                const Context& ctx, RowBlock rows) {
  const std::size_t d = std::size_t{1} << n;
  const std::size_t site_bit = std::size_t{1} << (n - f.site);
  const std::size_t spectators = site_bit - 1;  // sites j > i
  std::vector<std::optional<FaceWeightSet>> cache(2 * n + 1);

  for (std::size_t c = 0; c < d; ++c) {
    if (c & site_bit) continue;
    const int m = static_cast<int>(n - f.site) -
                  2 * static_cast<int>(std::popcount(c & spectators));
    auto& w = cache[static_cast<std::size_t>(m + static_cast<int>(n))];
    if (!w) {
      try {
        w = weights_in(ctx, f.x, theta - eta * static_cast<double>(m), eta);
      } catch (const NearSingular& e) {
        throw NearSingular("theta-eta*(" + std::to_string(m) + ")", e.modulus());
      }
    }
    Complex d0, o0, o1, d1;
    if (f.side == AuxSide::AuxFirst) {
      d0 = w->b_plus, o0 = w->c_plus, o1 = w->c_minus, d1 = w->b_minus;
    } else {
      d0 = w->b_minus, o0 = w->c_minus, o1 = w->c_plus, d1 = w->b_plus;
    }
    auto up_up = rows.row(c);
    auto down_down = rows.row(d + (c | site_bit));
    for (auto& v : up_up) v *= w->a;
    for (auto& v : down_down) v *= w->a;
    auto r0 = rows.row(c | site_bit);  // aux up, site down
    auto r1 = rows.row(d + c);         // aux down, site up
    for (std::size_t k = 0; k < rows.width; ++k) {
      const Complex a = r0[k];
      const Complex b = r1[k];
      r0[k] = d0 * a + o0 * b;
      r1[k] = o1 * a + d1 * b;
    }
  }
}

/// rows <- X_1 X_2 ... X_k rows, factors listed in product order.
void apply_product(std::span<const SiteFactor> factors, Complex theta, Complex eta,
                   std::size_t n, const Context& ctx, RowBlock rows) {
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    apply_site(*it, theta, eta, n, ctx, rows);
}

void apply_k(Complex lambda, const ModelParams& p, const Context& ctx, RowBlock rows) {
  const CMatrix k = k_matrix(lambda, p.theta, p.zeta, ctx);
  const std::size_t d = std::size_t{1} << p.n();
  for (std::size_t r = 0; r < 2 * d; ++r) {
    const Complex s = r < d ? k(0, 0) : k(1, 1);
    for (auto& v : rows.row(r)) v *= s;
  }
}

std::vector<SiteFactor> bulk_factors(Complex lambda, const ModelParams& p) {
  std::vector<SiteFactor> f;
  for (std::size_t i = 1; i <= p.n(); ++i) f.push_back({i, lambda - p.xis[i - 1], AuxSide::AuxFirst});
  return f;
}

std::vector<SiteFactor> hat_factors(Complex lambda, const ModelParams& p) {
  std::vector<SiteFactor> f;
  for (std::size_t i = p.n(); i >= 1; --i) f.push_back({i, lambda + p.xis[i - 1], AuxSide::AuxSecond});
  return f;
}

void require_shape(const ModelParams& p) {
  if (p.n() == 0 || p.xis.size() != p.n())
    throw InvariantViolation("chain operators need N >= 1 and |lambdas| == |xis|");
}

void require_dense_cap(std::size_t n) {
  if (n > kDenseChainCap)
    throw CapExceeded("dense chain operators are capped at N = " + std::to_string(kDenseChainCap));
}

AuxChainOperator identity_operator(std::size_t n) {
  return {n, CMatrix::identity(std::size_t{2} << n)};
}

RowBlock rows_of(CMatrix& m) { return {m.data(), m.dim()}; }

void count(const Context& ctx) {
  if (ctx.counters) ++ctx.counters->chain_operators;
}

// --- aux1 (x) aux2 (x) chain carriers ------------------------------------

/// Places X (on aux (x) chain) into aux_which (x) chain, identity on the
/// other aux space. make(s) builds X for other-aux spin s, which lets X
/// carry a theta - eta*sz_other shift.
template <class Make>
CMatrix lift_aux(std::size_t n, std::size_t which, Make&& make) {
  const std::size_t d = std::size_t{1} << n;
  CMatrix out(4 * d);
  for (std::size_t other_bit = 0; other_bit < 2; ++other_bit) {
    const CMatrix x = make(other_bit == 0 ? 1 : -1).op;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        const std::size_t row0 = (which == 1 ? a * 2 + other_bit : other_bit * 2 + a) * d;
        const std::size_t col0 = (which == 1 ? b * 2 + other_bit : other_bit * 2 + b) * d;
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) out(row0 + r, col0 + c) = x(a * d + r, b * d + c);
      }
    }
  }
  return out;
}

/// R_12(x; theta - eta * S) on aux1 (x) aux2 (x) chain with S the total
/// chain sz when chain_shift is set; swapped gives R_21.
CMatrix aux_pair_r(Complex x, const ModelParams& p, bool chain_shift, bool swapped,
                   const Context& ctx) {
  const std::size_t n = p.n();
  const ChainSpace chain(n);
  std::vector<std::optional<CMatrix>> cache(2 * n + 1);
  const CMatrix swap = swap4();
  return detail::embed_pair(n + 2, 0, 1, [&](std::size_t col) -> CMatrix {
    const int m = chain_shift ? chain.magnetization(col & (chain.dim() - 1)) : 0;
    auto& r = cache[static_cast<std::size_t>(m + static_cast<int>(n))];
    if (!r) {
      r = r_matrix(x, p.theta - p.eta * static_cast<double>(m), p.eta, ctx);
      if (swapped) r = swap * *r * swap;
    }
    return *r;
  });
}

ModelParams with_theta(const ModelParams& p, Complex theta) {
  ModelParams q = p;
  q.theta = theta;
  return q;
}

}  // namespace

AuxChainOperator embed_site_r(std::size_t site, Complex x, Complex theta, Complex eta,
                              AuxSide side, std::size_t n_sites, const Context& ctx) {
  if (site < 1 || site > n_sites) throw std::out_of_range("embed_site_r: site out of range");
  require_dense_cap(n_sites);
  count(ctx);
  AuxChainOperator out = identity_operator(n_sites);
  const SiteFactor f{site, x, side};
  apply_site(f, theta, eta, n_sites, ctx, rows_of(out.op));
  return out;
}

AuxChainOperator bulk_monodromy_operator(Complex lambda, const ModelParams& p,
                                         const Context& ctx) {
  require_shape(p);
  require_dense_cap(p.n());
  count(ctx);
  AuxChainOperator out = identity_operator(p.n());
  apply_product(bulk_factors(lambda, p), p.theta, p.eta, p.n(), ctx, rows_of(out.op));
  return out;
}

MonodromyBlocks bulk_monodromy(Complex lambda, const ModelParams& p, const Context& ctx) {
  return blocks_of(bulk_monodromy_operator(lambda, p, ctx));
}

AuxChainOperator hat_monodromy(Complex lambda, const ModelParams& p, const Context& ctx) {
  require_shape(p);
  require_dense_cap(p.n());
  count(ctx);
  AuxChainOperator out = identity_operator(p.n());
  apply_product(hat_factors(lambda, p), p.theta, p.eta, p.n(), ctx, rows_of(out.op));
  return out;
}

AuxChainOperator double_row_operator(Complex lambda, const ModelParams& p, const Context& ctx) {
  require_shape(p);
  require_dense_cap(p.n());
  count(ctx);
  AuxChainOperator out = identity_operator(p.n());
  auto rows = rows_of(out.op);
  apply_product(hat_factors(lambda, p), p.theta, p.eta, p.n(), ctx, rows);
  apply_k(lambda, p, ctx, rows);
  apply_product(bulk_factors(lambda, p), p.theta, p.eta, p.n(), ctx, rows);
  return out;
}

MonodromyBlocks double_row(Complex lambda, const ModelParams& p, const Context& ctx) {
  return blocks_of(double_row_operator(lambda, p, ctx));
}

std::vector<Complex> apply_double_row_b(Complex lambda, const ModelParams& p,
                                        std::span<const Complex> v, const Context& ctx) {
  require_shape(p);
  const std::size_t d = std::size_t{1} << p.n();
  if (v.size() != d) throw std::invalid_argument("apply_double_row_b: vector size != 2^N");
  count(ctx);
  std::vector<Complex> work(2 * d);
  std::copy(v.begin(), v.end(), work.begin() + static_cast<std::ptrdiff_t>(d));
  const RowBlock rows{work, 1};
  apply_product(hat_factors(lambda, p), p.theta, p.eta, p.n(), ctx, rows);
  apply_k(lambda, p, ctx, rows);
  apply_product(bulk_factors(lambda, p), p.theta, p.eta, p.n(), ctx, rows);
  work.resize(d);
  return work;
}

Complex gamma_hat(Complex lambda, const ModelParams& p) {
  Complex g = (p.n() % 2 == 0) ? 1.0 : -1.0;
  for (const Complex xi : p.xis) g *= std::sinh(lambda + xi - p.eta) * std::sinh(lambda + xi + p.eta);
  return g;
}

Complex b_crossing_ratio(Complex lambda, const ModelParams& p, CrossingSign sign,
                         const Context& ctx) {
  const double tol = ctx.guard_tol;
  const Complex f = std::sinh(lambda + p.zeta) * std::sinh(2.0 * (lambda + p.eta)) *
                    std::sinh(lambda + p.zeta + p.theta) /
                    (guarded_sinh(2.0 * lambda, tol, "2*lambda") *
                     guarded_sinh(lambda - p.zeta + p.eta, tol, "lambda-zeta+eta") *
                     guarded_sinh(lambda - p.theta - p.zeta + p.eta, tol, "lambda-theta-zeta+eta"));
  const double s = sign == CrossingSign::Uniform ? -1.0 : (p.n() % 2 == 0 ? -1.0 : 1.0);
  return s * f;
}

CheckReport check_grading(const MonodromyBlocks& blocks, std::size_t n_sites) {
  const ChainSpace chain(n_sites);
  double worst = 0.0;
  auto scan = [&](const CMatrix& m, int delta) {
    for (std::size_t r = 0; r < chain.dim(); ++r)
      for (std::size_t c = 0; c < chain.dim(); ++c)
        if (chain.magnetization(r) != chain.magnetization(c) + delta)
          worst = std::max(worst, std::abs(m(r, c)));
  };
  scan(blocks.A, 0);
  scan(blocks.B, -2);
  scan(blocks.C, +2);
  scan(blocks.D, 0);
  return make_report("grading", worst, 0.0);
}

CheckReport check_dyb_algebra(Complex l1, Complex l2, const ModelParams& p, double tol,
                              const Context& ctx) {
  require_shape(p);
  const std::size_t n = p.n();
  auto t_at = [&](Complex l, int s) {
    return bulk_monodromy_operator(l, with_theta(p, p.theta - p.eta * static_cast<double>(s)), ctx);
  };
  const CMatrix lhs = aux_pair_r(l1 - l2, p, true, false, ctx) *
                      lift_aux(n, 1, [&](int) { return t_at(l1, 0); }) *
                      lift_aux(n, 2, [&](int s) { return t_at(l2, s); });
  const CMatrix rhs = lift_aux(n, 2, [&](int) { return t_at(l2, 0); }) *
                      lift_aux(n, 1, [&](int s) { return t_at(l1, s); }) *
                      aux_pair_r(l1 - l2, p, false, false, ctx);
  return make_report("dyb_algebra", scaled_residual(lhs, rhs), tol, p);
}

CheckReport check_dynamical_reflection(Complex l1, Complex l2, const ModelParams& p, double tol,
                                       const Context& ctx) {
  require_shape(p);
  const std::size_t n = p.n();
  const CMatrix t1 = lift_aux(n, 1, [&](int) { return double_row_operator(l1, p, ctx); });
  const CMatrix t2 = lift_aux(n, 2, [&](int) { return double_row_operator(l2, p, ctx); });
  const CMatrix lhs = aux_pair_r(l1 - l2, p, true, false, ctx) * t1 *
                      aux_pair_r(l1 + l2, p, true, true, ctx) * t2;
  const CMatrix rhs = t2 * aux_pair_r(l1 + l2, p, true, false, ctx) * t1 *
                      aux_pair_r(l1 - l2, p, true, true, ctx);
  return make_report("dynamical_reflection", scaled_residual(lhs, rhs), tol, p);
}

CheckReport check_b_commutation(Complex l1, Complex l2, const ModelParams& p, double tol,
                                const Context& ctx) {
  const CMatrix b1 = double_row(l1, p, ctx).B;
  const CMatrix b2 = double_row(l2, p, ctx).B;
  return make_report("b_commutation", scaled_residual(b1 * b2, b2 * b1), tol, p);
}

CheckReport check_inverse_identity(Complex lambda, const ModelParams& p, double tol,
                                   const Context& ctx) {
  const CMatrix lhs = hat_monodromy(lambda, p, ctx).op * bulk_monodromy_operator(-lambda, p, ctx).op;
  const CMatrix rhs = gamma_hat(lambda, p) * CMatrix::identity(lhs.dim());
  return make_report("inverse_identity", scaled_residual(lhs, rhs), tol, p);
}

CheckReport check_b_crossing(Complex lambda, const ModelParams& p, double tol, CrossingSign sign,
                             const Context& ctx) {
  const Complex ratio = b_crossing_ratio(lambda, p, sign, ctx);
  const CMatrix lhs = double_row(-lambda - p.eta, p, ctx).B;
  const CMatrix rhs = ratio * double_row(lambda, p, ctx).B;
  return make_report(sign == CrossingSign::Uniform ? "b_crossing" : "b_crossing_alternating",
                     scaled_residual(lhs, rhs), tol, p);
}

}  // namespace sos
