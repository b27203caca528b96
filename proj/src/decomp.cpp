#include "tensorlab/decomp.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>

#include "poly.hpp"
#include "tensorlab/errors.hpp"
#include "tensorlab/linalg.hpp"

namespace tensorlab {

std::string to_string(GrossVerdict v) {
  switch (v) {
    case GrossVerdict::Symmetric:
      return "symmetric";
    case GrossVerdict::HypothesisNotMet:
      return "hypothesis not met";
    case GrossVerdict::Asymmetric:
      return "asymmetric";
  }
  return "unknown";
}

namespace {

void check_decomposes(const DenseTensor<Rational>& t, const Decomposition<Rational>& d) {
  if (!(d.shape == t.shape()))
    throw std::invalid_argument("decomposition shape " + to_string(d.shape) +
                                " does not match tensor shape " + to_string(t.shape()));
  if (!(d.reconstruct() == t))
    throw std::invalid_argument("decomposition does not reconstruct the tensor");
}

std::vector<Rational> projection(const Decomposition<Rational>::Summand& s,
                                 const std::vector<std::size_t>& subset) {
  std::vector<std::vector<Rational>> vs;
  for (auto k : subset) vs.push_back(s[k]);
  const auto t = rank_one(vs);
  return {t.data().begin(), t.data().end()};
}

ProportionalityCertificate certify(std::size_t index, const Decomposition<Rational>::Summand& s) {
  ProportionalityCertificate c;
  c.summand = index;
  c.proportional = true;
  const auto& ref = s[0];
  const auto p = static_cast<std::size_t>(
      std::find_if(ref.begin(), ref.end(), [](const Rational& x) { return sgn(x) != 0; }) -
      ref.begin());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Rational lambda = s[k][p] / ref[p];
    c.scalars.push_back(lambda);
    if (s[k].size() != ref.size()) {
      c.proportional = false;
      continue;
    }
    for (std::size_t q = 0; q < ref.size(); ++q)
      if (s[k][q] != lambda * ref[q]) c.proportional = false;
  }
  return c;
}

template <Scalar T>
std::size_t matrix_rank(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, double>) {
    return rank_numeric(m);
  } else {
    return rank_exact(m);
  }
}

}  // namespace

GrossReport gross_check(const DenseTensor<Rational>& t, const Decomposition<Rational>& d) {
  const std::size_t n = t.order();
  if (n <= 2) throw std::invalid_argument("gross_check: needs more than two factors");
  if (!is_symmetric(t)) throw std::invalid_argument("gross_check: tensor is not symmetric");
  check_decomposes(t, d);

  GrossReport rep;
  const std::size_t r = d.size();
  rep.independence_ok = true;
  // Each I with |I| = n - 2 is the complement of a pair j < k.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) pairs.emplace_back(j, k);
  std::vector<std::vector<std::size_t>> subsets;
  for (auto [j, k] : pairs) {
    std::vector<std::size_t> subset;
    for (std::size_t q = 0; q < n; ++q)
      if (q != j && q != k) subset.push_back(q);
    std::vector<std::vector<Rational>> rows;
    for (const auto& s : d.summands) rows.push_back(projection(s, subset));
    const std::size_t len = rows.empty() ? 0 : rows[0].size();
    const bool ok = r == 0 || rank_exact(stack_rows(rows, len)) == r;
    rep.independence.push_back({subset, ok});
    rep.independence_ok = rep.independence_ok && ok;
    subsets.push_back(std::move(subset));
  }

  for (std::size_t i = 0; i < r; ++i) rep.certificates.push_back(certify(i, d.summands[i]));

  if (!rep.independence_ok) {
    rep.verdict = GrossVerdict::HypothesisNotMet;
    return rep;
  }

  // alpha_i is dual to the projections: alpha_i(P_j) = delta_ij. Applied to
  // T it must give a_i^(j) (x) a_i^(k), which is then a symmetric matrix.
  rep.contractions_symmetric = true;
  const std::size_t dim = t.shape()[0];
  for (std::size_t q = 0; q < subsets.size(); ++q) {
    const auto& subset = subsets[q];
    std::vector<std::vector<Rational>> rows;
    for (const auto& s : d.summands) rows.push_back(projection(s, subset));
    const auto m = stack_rows(rows, rows[0].size());
    const auto flat = flatten(t, Bipartition(subset, n));
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Rational> e(r, Rational(0));
      e[i] = 1;
      const auto alpha = solve_exact(m, std::span<const Rational>(e));
      if (!alpha) throw std::logic_error("gross_check: independent projections without a dual basis");
      std::vector<Rational> contracted(flat.cols(), Rational(0));
      for (std::size_t a = 0; a < flat.rows(); ++a) {
        if (sgn((*alpha)[a]) == 0) continue;
        for (std::size_t b = 0; b < flat.cols(); ++b) contracted[b] += (*alpha)[a] * flat(a, b);
      }
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a + 1; b < dim; ++b)
          if (contracted[a * dim + b] != contracted[b * dim + a]) rep.contractions_symmetric = false;
    }
  }

  const bool all_proportional =
      std::all_of(rep.certificates.begin(), rep.certificates.end(),
                  [](const ProportionalityCertificate& c) { return c.proportional; });
  rep.verdict = rep.contractions_symmetric && all_proportional ? GrossVerdict::Symmetric
                                                               : GrossVerdict::Asymmetric;
  rep.symmetric_verdict = rep.verdict == GrossVerdict::Symmetric;
  if (rep.symmetric_verdict) {
    Decomposition<Rational> sym{d.shape, {}, {}};
    for (std::size_t i = 0; i < r; ++i) {
      Rational c = 1;
      for (std::size_t k = 1; k < n; ++k) c *= rep.certificates[i].scalars[k];
      const auto& v = d.summands[i][0];
      Decomposition<Rational>::Summand s(n, v);
      for (auto& x : s[0]) x *= c;
      sym.summands.push_back(std::move(s));
    }
    rep.symmetric_form = std::move(sym);
  }
  return rep;
}

bool gross_minimality_check(const DenseTensor<Rational>& t, const Decomposition<Rational>& d) {
  check_decomposes(t, d);
  const std::size_t n = t.order();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> left(k);
    for (std::size_t q = 0; q < k; ++q) left[q] = q;
    if (f_rank(t, Bipartition(left, n)) == d.size()) return true;
  }
  return false;
}

template <Scalar T>
std::size_t kruskal_rank(const Matrix<T>& m) {
  const std::size_t cols = m.cols();
  if (cols > kKruskalMaxColumns)
    throw CapExceeded("kruskal_rank: too many columns", cols, kKruskalMaxColumns);
  std::size_t best = 0;
  for (std::size_t k = 1; k <= std::min(cols, m.rows()); ++k) {
    for (std::uint32_t mask = 0; mask < (1u << cols); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
      Matrix<T> sub(m.rows(), k, m.ring());
      std::size_t c = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!(mask >> j & 1u)) continue;
        for (std::size_t i = 0; i < m.rows(); ++i) sub(i, c) = m(i, j);
        ++c;
      }
      if (matrix_rank(sub) < k) return best;
    }
    best = k;
  }
  return best;
}

template <Scalar T>
Matrix<T> factor_matrix(const Decomposition<T>& d, std::size_t factor) {
  d.validate();
  if (factor >= d.shape.order()) throw std::invalid_argument("factor_matrix: factor out of range");
  Matrix<T> m(d.shape[factor], d.size(), d.ring);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t a = 0; a < d.shape[factor]; ++a) m(a, i) = d.summands[i][factor][a];
  return m;
}

template <Scalar T>
bool kruskal_uniqueness(const Decomposition<T>& d) {
  if (d.shape.order() != 3)
    throw std::invalid_argument("kruskal_uniqueness: needs exactly three factors, got " +
                                std::to_string(d.shape.order()));
  d.validate();
  const std::size_t r = d.size();
  if (r <= 1) return true;
  std::size_t sum = 0;
  for (std::size_t k = 0; k < 3; ++k) sum += kruskal_rank(factor_matrix(d, k));
  return sum >= 2 * r + 2;
}

// ---------------------------------------------------------------------------
// Binary forms.

namespace {

Rational binomial(std::size_t n, std::size_t k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

std::vector<std::complex<double>> complex_roots(const poly::Poly& p) {
  const long deg = poly::degree(p);
  if (deg < 1) return {};
  const auto n = static_cast<Eigen::Index>(deg);
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  const double lead = p[deg].get_d();
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -p[i].get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("sylvester: root finding did not converge");
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

// Distinct rational roots of p. Real roots are polished by Newton steps in
// 256-bit floats, and continued-fraction convergents of each are tested
// exactly.
std::vector<Rational> rational_roots(poly::Poly p) {
  poly::trim(p);
  std::vector<Rational> roots;
  while (!p.empty() && sgn(p.front()) == 0) {
    if (roots.empty()) roots.push_back(Rational(0));
    p.erase(p.begin());
  }
  if (poly::degree(p) <= 0) return roots;
  constexpr mp_bitcnt_t prec = 256;
  const mpf_class eps(std::ldexp(1.0, -180), prec);
  for (const auto& z : complex_roots(p)) {
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) continue;
    if (poly::degree(p) <= 0) break;
    std::vector<mpf_class> c;
    for (const auto& x : p) c.emplace_back(x, prec);
    mpf_class x(z.real(), prec);
    for (int it = 0; it < 100; ++it) {
      mpf_class f(0, prec), df(0, prec);
      for (std::size_t k = c.size(); k-- > 0;) {
        df = df * x + f;
        f = f * x + c[k];
      }
      if (sgn(df) == 0) break;
      const mpf_class step = f / df;
      x -= step;
      if (abs(step) <= eps * (1 + abs(x))) break;
    }
    Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    mpf_class y = x;
    for (int it = 0; it < 120; ++it) {
      const mpf_class fl = floor(y);
      const Integer a(fl);
      const Integer h = a * h1 + h2, k = a * k1 + k2;
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      const Rational cand(h, k);
      if (sgn(poly::evaluate(p, cand)) == 0) {
        roots.push_back(cand);
        p = poly::divide_linear(p, cand);
        break;
      }
      const mpf_class frac = y - fl;
      if (frac <= eps) break;
      y = 1 / frac;
    }
  }
  return roots;
}

double relative_residual(const BinaryForm& f, const std::vector<WaringTermNumeric>& terms) {
  const std::size_t d = f.degree();
  double err = 0.0, norm = 0.0;
  for (std::size_t k = 0; k <= d; ++k) {
    std::complex<double> acc = 0.0;
    for (const auto& t : terms)
      acc += t.coeff * std::pow(t.alpha, static_cast<int>(d - k)) * std::pow(t.beta, static_cast<int>(k));
    acc *= binomial(d, k).get_d();
    const double target = f.coeffs[k].get_d();
    err += std::norm(acc - target);
    norm += target * target;
  }
  return std::sqrt(err / norm);
}

}  // namespace

DenseTensor<Rational> binary_form_tensor(const BinaryForm& f) {
  if (f.coeffs.empty()) throw std::invalid_argument("binary_form_tensor: empty form");
  const std::size_t d = f.degree();
  if (d == 0) throw std::invalid_argument("binary_form_tensor: constant form");
  DenseTensor<Rational> t(Shape(std::vector<std::size_t>(d, 2)));
  for (std::size_t flat = 0; flat < t.data().size(); ++flat) {
    const auto k = static_cast<std::size_t>(std::popcount(flat));
    t[flat] = f.coeffs[k] / binomial(d, k);
  }
  return t;
}

Decomposition<Rational> BinaryWaring::to_decomposition() const {
  if (status != Status::Decomposed || !exact)
    throw std::logic_error("to_decomposition: only exact decompositions convert");
  Decomposition<Rational> d{Shape(std::vector<std::size_t>(degree, 2)), {}, {}};
  for (const auto& t : terms) {
    const std::vector<Rational> v{t.alpha, t.beta};
    Decomposition<Rational>::Summand s(degree, v);
    s[0] = {t.coeff * t.alpha, t.coeff * t.beta};
    d.summands.push_back(std::move(s));
  }
  return d;
}

BinaryWaring sylvester_decompose_binary(const BinaryForm& f) {
  BinaryWaring out;
  SylvesterKernel ker;
  try {
    ker = sylvester_kernel(f);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e)) throw;
    out.status = BinaryWaring::Status::RankExceedsGenericBound;
    out.degree = f.degree();
    return out;
  }
  const std::size_t d = f.degree();
  const std::size_t r = ker.rank;
  out.degree = d;
  out.rank = r;

  // q(s, t) = sum_j g_j s^(r-j) t^j; with s = 1 its roots t give nodes
  // (1 : t), and a drop in degree is the node (0 : 1).
  const poly::Poly p(ker.kernel_form.begin(), ker.kernel_form.end());
  const bool at_infinity = poly::degree(p) < static_cast<long>(r);

  std::vector<Rational> a(d + 1);
  for (std::size_t k = 0; k <= d; ++k) a[k] = f.coeffs[k] / binomial(d, k);

  if (auto roots = rational_roots(p); roots.size() + (at_infinity ? 1 : 0) == r) {
    std::vector<std::pair<Rational, Rational>> nodes;
    for (const auto& x : roots) nodes.emplace_back(Rational(1), x);
    if (at_infinity) nodes.emplace_back(Rational(0), Rational(1));
    Matrix<Rational> m(d + 1, r);
    for (std::size_t k = 0; k <= d; ++k)
      for (std::size_t i = 0; i < r; ++i) {
        Rational v = 1;
        for (std::size_t e = 0; e < d - k; ++e) v *= nodes[i].first;
        for (std::size_t e = 0; e < k; ++e) v *= nodes[i].second;
        m(k, i) = v;
      }
    const auto coeffs = solve_exact(m, std::span<const Rational>(a));
    if (!coeffs) throw std::logic_error("sylvester: nodes do not span the form");
    out.exact = true;
    for (std::size_t i = 0; i < r; ++i) {
      out.terms.push_back({(*coeffs)[i], nodes[i].first, nodes[i].second});
      out.numeric_terms.push_back(
          {(*coeffs)[i].get_d(), nodes[i].first.get_d(), nodes[i].second.get_d()});
    }
    if (!(out.to_decomposition().reconstruct() == binary_form_tensor(f)))
      throw std::logic_error("sylvester: exact decomposition does not reconstruct");
    out.relative_residual = 0.0;
    return out;
  }

  std::vector<std::pair<std::complex<double>, std::complex<double>>> nodes;
  // Unit-length nodes keep the power matrix well scaled when a root is large.
  for (const auto& x : complex_roots(p)) {
    const double len = std::sqrt(1.0 + std::norm(x));
    nodes.emplace_back(1.0 / len, x / len);
  }
  if (at_infinity) nodes.emplace_back(0.0, 1.0);
  const auto rows = static_cast<Eigen::Index>(d + 1);
  const auto cols = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd m(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    rhs(k) = a[static_cast<std::size_t>(k)].get_d();
    for (Eigen::Index i = 0; i < cols; ++i) {
      const auto& [al, be] = nodes[static_cast<std::size_t>(i)];
      m(k, i) = std::pow(al, static_cast<int>(d) - static_cast<int>(k)) * std::pow(be, static_cast<int>(k));
    }
  }
  const Eigen::VectorXcd c = m.colPivHouseholderQr().solve(rhs);
  for (Eigen::Index i = 0; i < cols; ++i)
    out.numeric_terms.push_back({c(i), nodes[static_cast<std::size_t>(i)].first,
                                 nodes[static_cast<std::size_t>(i)].second});
  out.relative_residual = relative_residual(f, out.numeric_terms);
  return out;
}

// ---------------------------------------------------------------------------
// Direct sums.

template <Scalar T>
DenseTensor<T> direct_sum(const DenseTensor<T>& a, const DenseTensor<T>& b) {
  if (a.order() != b.order()) throw std::invalid_argument("direct_sum: factor counts differ");
  if (!(a.ring() == b.ring())) throw std::invalid_argument("direct_sum: ring mismatch");
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < a.order(); ++k) dims.push_back(a.shape()[k] + b.shape()[k]);
  DenseTensor<T> out(Shape(dims), a.ring());
  for (std::size_t flat = 0; flat < a.data().size(); ++flat)
    out.at(unflatten_index(a.shape(), flat)) = a[flat];
  for (std::size_t flat = 0; flat < b.data().size(); ++flat) {
    auto idx = unflatten_index(b.shape(), flat);
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] += a.shape()[k];
    out.at(idx) = b[flat];
  }
  return out;
}

StrassenRecord strassen_experiment(const DenseTensor<Fp>& t1, const DenseTensor<Fp>& t2,
                                   std::size_t r_max) {
  if (t1.order() != 3 || t2.order() != 3)
    throw std::invalid_argument("strassen_experiment: both tensors need three factors");
  const auto sum = direct_sum(t1, t2);
  StrassenRecord rec;
  rec.r_max = r_max;
  rec.r1 = exact_rank_bruteforce(t1, r_max).rank;
  rec.r2 = exact_rank_bruteforce(t2, r_max).rank;
  rec.r_sum = exact_rank_bruteforce(sum, r_max).rank;
  if (rec.r1 && rec.r2) {
    const std::size_t bound = *rec.r1 + *rec.r2;
    if (rec.r_sum ? *rec.r_sum > bound : bound <= r_max)
      throw std::logic_error("strassen_experiment: direct sum rank exceeds r1 + r2");
    if (rec.r_sum) rec.additive = *rec.r_sum == bound;
  }
  return rec;
}

#define TENSORLAB_INSTANTIATE(T)                                           \
  template std::size_t kruskal_rank(const Matrix<T>&);                    \
  template Matrix<T> factor_matrix(const Decomposition<T>&, std::size_t); \
  template bool kruskal_uniqueness(const Decomposition<T>&);              \
  template DenseTensor<T> direct_sum(const DenseTensor<T>&, const DenseTensor<T>&);

TENSORLAB_INSTANTIATE(Rational)
TENSORLAB_INSTANTIATE(Fp)
TENSORLAB_INSTANTIATE(double)

}  // namespace tensorlab
