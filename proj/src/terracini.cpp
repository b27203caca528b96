#include "tensorlab/terracini.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "tensorlab/errors.hpp"
#include "tensorlab/linalg.hpp"
#include "tensorlab/parallel.hpp"

namespace tensorlab::terracini {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t product(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{1}, std::multiplies<>());
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("variety: " + msg);
}

void require_positive(const std::vector<std::size_t>& v, const char* what) {
  require(!v.empty(), std::string(what) + " list is empty");
  for (auto x : v) require(x >= 1, std::string(what) + " must be positive");
}

std::vector<std::size_t> parse_list(std::string_view text) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
      throw std::invalid_argument("variety: malformed number '" + std::string(item) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

using Vec = std::vector<Rational>;

Vec unit(std::size_t n, std::size_t j) {
  Vec e(n, Rational(0));
  e[j] = 1;
  return e;
}

Vec tensor_data(const DenseTensor<Rational>& t) { return Vec(t.data().begin(), t.data().end()); }

void accumulate(Vec& acc, const DenseTensor<Rational>& t) {
  if (acc.empty()) acc.assign(t.data().size(), Rational(0));
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
}

// Tangent directions of the multiprojective point given by `factors`, where
// the positions in each group share one vector (Segre-Veronese style). For a
// group of positions P and a basis vector e, the direction is the Leibniz sum
// over p in P of the rank-one tensor with factor p replaced by e.
std::vector<Vec> leibniz_tangent(const std::vector<Vec>& factors,
                                 const std::vector<std::vector<std::size_t>>& groups) {
  for (const auto& f : factors) {
    if (std::all_of(f.begin(), f.end(), [](const Rational& x) { return sgn(x) == 0; }))
      throw std::invalid_argument("affine_tangent_basis: zero factor vector");
  }
  std::vector<Vec> out;
  for (const auto& group : groups) {
    const std::size_t dim = factors[group.front()].size();
    for (std::size_t j = 0; j < dim; ++j) {
      Vec acc;
      for (auto pos : group) {
        auto f = factors;
        f[pos] = unit(dim, j);
        accumulate(acc, rank_one(f));
      }
      out.push_back(std::move(acc));
    }
  }
  return out;
}

// Mode-k product: replaces factor k (dimension m.cols()) by m.rows().
DenseTensor<Rational> mode_product(const DenseTensor<Rational>& t, std::size_t k,
                                   const Matrix<Rational>& m) {
  const Shape& s = t.shape();
  if (s[k] != m.cols()) throw std::invalid_argument("mode_product: dimension mismatch");
  auto dims = s.dims();
  dims[k] = m.rows();
  DenseTensor<Rational> out{Shape(dims)};
  std::size_t outer = 1, inner = 1;
  for (std::size_t q = 0; q < k; ++q) outer *= s[q];
  for (std::size_t q = k + 1; q < s.order(); ++q) inner *= s[q];
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t a = 0; a < m.rows(); ++a)
      for (std::size_t b = 0; b < m.cols(); ++b) {
        const Rational& mab = m(a, b);
        if (sgn(mab) == 0) continue;
        for (std::size_t i = 0; i < inner; ++i)
          out[(o * m.rows() + a) * inner + i] += mab * t[(o * m.cols() + b) * inner + i];
      }
  return out;
}

DenseTensor<Rational> apply_maps(const std::vector<Matrix<Rational>>& maps,
                                 const DenseTensor<Rational>& core) {
  DenseTensor<Rational> t = core;
  for (std::size_t k = 0; k < maps.size(); ++k) t = mode_product(t, k, maps[k]);
  return t;
}

Matrix<Rational> elementary(std::size_t rows, std::size_t cols, std::size_t a, std::size_t b) {
  Matrix<Rational> e(rows, cols);
  e(a, b) = 1;
  return e;
}

// Basis of S^d(Q^r) inside (Q^r)^{(x)d}: one symmetrized monomial per
// multiset of indices, scaled to integer entries.
std::vector<DenseTensor<Rational>> symmetric_basis(std::size_t r, std::size_t d) {
  std::vector<DenseTensor<Rational>> out;
  const Shape shape(std::vector<std::size_t>(d, r));
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    DenseTensor<Rational> t(shape);
    auto perm = idx;
    do {
      t.at(perm) = 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.push_back(std::move(t));
    // Next weakly increasing index tuple.
    std::size_t k = d;
    while (k > 0 && idx[k - 1] == r - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t q = k; q < d; ++q) idx[q] = idx[k - 1];
  }
  return out;
}

Rational draw(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> dist(-10, 10);
  return Rational(dist(gen));
}

Vec draw_vector(std::size_t n, std::mt19937_64& gen) {
  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    Vec v(n);
    for (auto& x : v) x = draw(gen);
    if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; })) return v;
  }
  throw std::runtime_error("sample_point: drew a zero vector " + std::to_string(kMaxResamples) +
                           " times in a row");
}

Matrix<Rational> draw_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
  Matrix<Rational> m(rows, cols);
  for (auto& x : m.entries()) x = draw(gen);
  return m;
}

}  // namespace

void validate(const VarietySpec& spec) {
  std::visit(overloaded{
                 [](const Segre& s) { require_positive(s.dims, "dimension"); },
                 [](const Veronese& v) {
                   require(v.n >= 1, "Veronese dimension must be positive");
                   require(v.d >= 1, "Veronese degree must be positive");
                 },
                 [](const SegreVeronese& s) {
                   require_positive(s.dims, "dimension");
                   require_positive(s.degrees, "degree");
                   require(s.dims.size() == s.degrees.size(), "one degree per factor required");
                 },
                 [](const Subspace& s) {
                   require_positive(s.dims, "dimension");
                   require_positive(s.ranks, "multirank");
                   require(s.dims.size() == s.ranks.size(), "one multirank per factor required");
                   const std::size_t all = product(s.ranks);
                   for (std::size_t i = 0; i < s.dims.size(); ++i) {
                     require(s.ranks[i] <= s.dims[i], "multirank exceeds dimension");
                     if (s.dims.size() > 1)
                       require(s.ranks[i] <= all / s.ranks[i],
                               "multirank r_i exceeds the product of the other r_j");
                   }
                 },
                 [](const SymSubspace& s) {
                   require(s.dim >= 1 && s.d >= 1, "dimension and degree must be positive");
                   require(s.r >= 1 && s.r <= s.dim, "subspace rank must lie in [1, dim]");
                 },
             },
             spec);
}

VarietySpec parse_variety(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("variety: expected kind:parameters, got '" + std::string(text) + "'");
  const auto kind = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  const auto at = rest.find('@');
  auto left = parse_list(rest.substr(0, at));
  std::vector<std::size_t> right;
  if (at != std::string_view::npos) right = parse_list(rest.substr(at + 1));
  auto no_at = [&] {
    if (at != std::string_view::npos)
      throw std::invalid_argument("variety: unexpected '@' in '" + std::string(text) + "'");
  };
  auto need_at = [&] {
    if (at == std::string_view::npos)
      throw std::invalid_argument("variety: '" + std::string(kind) + "' needs '@'");
  };
  VarietySpec spec;
  if (kind == "segre") {
    no_at();
    spec = Segre{left};
  } else if (kind == "veronese") {
    no_at();
    if (left.size() != 2) throw std::invalid_argument("variety: veronese:n,d takes two numbers");
    spec = Veronese{left[0], left[1]};
  } else if (kind == "segver") {
    need_at();
    spec = SegreVeronese{left, right};
  } else if (kind == "sub") {
    need_at();
    spec = Subspace{left, right};
  } else if (kind == "symsub") {
    need_at();
    if (left.size() != 2 || right.size() != 1)
      throw std::invalid_argument("variety: symsub:n,r@d takes three numbers");
    spec = SymSubspace{left[0], left[1], right[0]};
  } else {
    throw std::invalid_argument("variety: unknown kind '" + std::string(kind) + "'");
  }
  validate(spec);
  return spec;
}

std::string to_string(const VarietySpec& spec) {
  return std::visit(
      overloaded{
          [](const Segre& s) { return "segre:" + join(s.dims); },
          [](const Veronese& v) {
            return "veronese:" + std::to_string(v.n) + "," + std::to_string(v.d);
          },
          [](const SegreVeronese& s) { return "segver:" + join(s.dims) + "@" + join(s.degrees); },
          [](const Subspace& s) { return "sub:" + join(s.dims) + "@" + join(s.ranks); },
          [](const SymSubspace& s) {
            return "symsub:" + std::to_string(s.dim) + "," + std::to_string(s.r) + "@" +
                   std::to_string(s.d);
          },
      },
      spec);
}

std::size_t cone_dimension(const VarietySpec& spec) {
  return std::visit(overloaded{
                        [](const Segre& s) {
                          std::size_t c = 1;
                          for (auto d : s.dims) c += d - 1;
                          return c;
                        },
                        [](const Veronese& v) { return v.n; },
                        [](const SegreVeronese& s) {
                          std::size_t c = 1;
                          for (auto d : s.dims) c += d - 1;
                          return c;
                        },
                        [](const Subspace& s) {
                          std::size_t c = product(s.ranks);
                          for (std::size_t i = 0; i < s.dims.size(); ++i)
                            c += s.ranks[i] * (s.dims[i] - s.ranks[i]);
                          return c;
                        },
                        [](const SymSubspace& s) {
                          return binom(s.r + s.d - 1, s.d) + s.r * (s.dim - s.r);
                        },
                    },
                    spec);
}

std::size_t ambient_dimension(const VarietySpec& spec) {
  return std::visit(overloaded{
                        [](const Segre& s) { return product(s.dims); },
                        [](const Veronese& v) { return binom(v.n + v.d - 1, v.d); },
                        [](const SegreVeronese& s) {
                          std::size_t a = 1;
                          for (std::size_t i = 0; i < s.dims.size(); ++i)
                            a *= binom(s.dims[i] + s.degrees[i] - 1, s.degrees[i]);
                          return a;
                        },
                        [](const Subspace& s) { return product(s.dims); },
                        [](const SymSubspace& s) { return binom(s.dim + s.d - 1, s.d); },
                    },
                    spec);
}

Shape dense_shape(const VarietySpec& spec) {
  return std::visit(overloaded{
                        [](const Segre& s) { return Shape(s.dims); },
                        [](const Veronese& v) { return Shape(std::vector<std::size_t>(v.d, v.n)); },
                        [](const SegreVeronese& s) {
                          std::vector<std::size_t> dims;
                          for (std::size_t i = 0; i < s.dims.size(); ++i)
                            dims.insert(dims.end(), s.degrees[i], s.dims[i]);
                          return Shape(dims);
                        },
                        [](const Subspace& s) { return Shape(s.dims); },
                        [](const SymSubspace& s) {
                          return Shape(std::vector<std::size_t>(s.d, s.dim));
                        },
                    },
                    spec);
}

PointParams sample_point(const VarietySpec& spec, std::mt19937_64& gen) {
  validate(spec);
  PointParams p;
  std::visit(overloaded{
                 [&](const Segre& s) {
                   for (auto d : s.dims) p.vectors.push_back(draw_vector(d, gen));
                 },
                 [&](const Veronese& v) { p.vectors.push_back(draw_vector(v.n, gen)); },
                 [&](const SegreVeronese& s) {
                   for (auto d : s.dims) p.vectors.push_back(draw_vector(d, gen));
                 },
                 [&](const Subspace& s) {
                   Vec core = draw_vector(product(s.ranks), gen);
                   p.core = DenseTensor<Rational>(Shape(s.ranks), std::move(core));
                   for (std::size_t i = 0; i < s.dims.size(); ++i)
                     p.maps.push_back(draw_matrix(s.dims[i], s.ranks[i], gen));
                 },
                 [&](const SymSubspace& s) {
                   DenseTensor<Rational> core{Shape(std::vector<std::size_t>(s.d, s.r))};
                   for (const auto& b : symmetric_basis(s.r, s.d))
                     core = add(core, scale(b, draw(gen)));
                   p.core = std::move(core);
                   p.maps.push_back(draw_matrix(s.dim, s.r, gen));
                 },
             },
             spec);
  return p;
}

std::vector<std::vector<Rational>> affine_tangent_basis(const VarietySpec& spec,
                                                        const PointParams& point) {
  validate(spec);
  return std::visit(
      overloaded{
          [&](const Segre& s) {
            if (point.vectors.size() != s.dims.size())
              throw std::invalid_argument("affine_tangent_basis: one vector per factor required");
            std::vector<std::vector<std::size_t>> groups;
            for (std::size_t i = 0; i < s.dims.size(); ++i) {
              if (point.vectors[i].size() != s.dims[i])
                throw std::invalid_argument("affine_tangent_basis: vector length mismatch");
              groups.push_back({i});
            }
            return leibniz_tangent(point.vectors, groups);
          },
          [&](const Veronese& v) {
            if (point.vectors.size() != 1 || point.vectors[0].size() != v.n)
              throw std::invalid_argument("affine_tangent_basis: Veronese needs one vector");
            std::vector<std::size_t> all(v.d);
            std::iota(all.begin(), all.end(), 0);
            return leibniz_tangent(std::vector<Vec>(v.d, point.vectors[0]), {all});
          },
          [&](const SegreVeronese& s) {
            if (point.vectors.size() != s.dims.size())
              throw std::invalid_argument("affine_tangent_basis: one vector per factor required");
            std::vector<Vec> factors;
            std::vector<std::vector<std::size_t>> groups;
            for (std::size_t i = 0; i < s.dims.size(); ++i) {
              if (point.vectors[i].size() != s.dims[i])
                throw std::invalid_argument("affine_tangent_basis: vector length mismatch");
              groups.emplace_back();
              for (std::size_t k = 0; k < s.degrees[i]; ++k) {
                groups.back().push_back(factors.size());
                factors.push_back(point.vectors[i]);
              }
            }
            return leibniz_tangent(factors, groups);
          },
          [&](const Subspace& s) {
            if (!point.core || point.maps.size() != s.dims.size())
              throw std::invalid_argument("affine_tangent_basis: subspace point needs core and maps");
            const auto& core = *point.core;
            if (core.is_zero()) throw std::invalid_argument("affine_tangent_basis: zero core tensor");
            std::vector<Vec> out;
            // Core directions.
            for (std::size_t flat = 0; flat < core.data().size(); ++flat) {
              DenseTensor<Rational> e(core.shape());
              e[flat] = 1;
              out.push_back(tensor_data(apply_maps(point.maps, e)));
            }
            // Single-factor map directions.
            for (std::size_t i = 0; i < s.dims.size(); ++i)
              for (std::size_t a = 0; a < s.dims[i]; ++a)
                for (std::size_t b = 0; b < s.ranks[i]; ++b) {
                  auto maps = point.maps;
                  maps[i] = elementary(s.dims[i], s.ranks[i], a, b);
                  out.push_back(tensor_data(apply_maps(maps, core)));
                }
            return out;
          },
          [&](const SymSubspace& s) {
            if (!point.core || point.maps.size() != 1)
              throw std::invalid_argument("affine_tangent_basis: symmetric subspace point needs core and one map");
            const auto& core = *point.core;
            if (core.is_zero()) throw std::invalid_argument("affine_tangent_basis: zero core tensor");
            const std::vector<Matrix<Rational>> maps(s.d, point.maps[0]);
            std::vector<Vec> out;
            for (const auto& b : symmetric_basis(s.r, s.d)) out.push_back(tensor_data(apply_maps(maps, b)));
            for (std::size_t a = 0; a < s.dim; ++a)
              for (std::size_t b = 0; b < s.r; ++b) {
                Vec acc;
                for (std::size_t k = 0; k < s.d; ++k) {
                  auto m = maps;
                  m[k] = elementary(s.dim, s.r, a, b);
                  accumulate(acc, apply_maps(m, core));
                }
                out.push_back(std::move(acc));
              }
            return out;
          },
      },
      spec);
}

SecantReport secant_dimension(const VarietySpec& spec, std::size_t r, std::size_t trials,
                              std::uint64_t seed) {
  validate(spec);
  if (r == 0) throw std::invalid_argument("secant_dimension: r must be at least 1");
  if (trials == 0) throw std::invalid_argument("secant_dimension: trials must be at least 1");
  const Shape shape = dense_shape(spec);
  if (shape.total() > kMaxAmbient)
    throw CapExceeded("secant_dimension: ambient space too large", shape.total(), kMaxAmbient);

  SecantReport rep;
  rep.variety = to_string(spec);
  rep.r = r;
  rep.ambient_affine_dim = ambient_dimension(spec);
  rep.expected_affine_dim = std::min(r * cone_dimension(spec), rep.ambient_affine_dim);
  for (std::size_t t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(t)};
    std::mt19937_64 gen(seq);
    std::vector<Vec> rows;
    for (std::size_t k = 0; k < r; ++k) {
      auto tangent = affine_tangent_basis(spec, sample_point(spec, gen));
      rows.insert(rows.end(), std::make_move_iterator(tangent.begin()),
                  std::make_move_iterator(tangent.end()));
    }
    const std::size_t dim = rank_exact(stack_rows(rows, shape.total()));
    rep.computed_affine_dim = std::max(rep.computed_affine_dim, dim);
    rep.trials = t + 1;
    if (rep.computed_affine_dim == rep.expected_affine_dim) break;
  }
  if (rep.computed_affine_dim > rep.expected_affine_dim)
    throw std::logic_error("secant_dimension: computed dimension exceeds the expected count for " +
                           rep.variety);
  rep.defect = rep.expected_affine_dim - rep.computed_affine_dim;
  return rep;
}

GenericRankReport generic_rank(const VarietySpec& spec, std::size_t trials, std::uint64_t seed) {
  GenericRankReport out;
  const std::size_t ambient = ambient_dimension(spec);
  for (std::size_t r = 1; r <= ambient; ++r) {
    out.profile.push_back(secant_dimension(spec, r, trials, seed));
    if (out.profile.back().computed_affine_dim == ambient) {
      out.generic_rank = r;
      return out;
    }
  }
  throw std::logic_error("generic_rank: secants never filled the ambient space");
}

std::vector<SecantReport> defect_scan(const std::vector<VarietySpec>& family, std::size_t r_min,
                                      std::optional<std::size_t> r_max, std::size_t trials,
                                      std::uint64_t seed) {
  if (r_min == 0) r_min = 1;
  std::vector<SecantReport> out;
  if (!r_max) {
    std::vector<GenericRankReport> per_spec(family.size());
    parallel_for(family.size(), [&](std::size_t i) { per_spec[i] = generic_rank(family[i], trials, seed); });
    for (auto& g : per_spec)
      for (auto& rep : g.profile)
        if (rep.r >= r_min) out.push_back(std::move(rep));
    return out;
  }
  struct Cell {
    std::size_t spec;
    std::size_t r;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t r = r_min; r <= *r_max; ++r) cells.push_back({i, r});
  out.resize(cells.size());
  parallel_for(cells.size(), [&](std::size_t c) {
    out[c] = secant_dimension(family[cells[c].spec], cells[c].r, trials, seed);
  });
  return out;
}

}  // namespace tensorlab::terracini
