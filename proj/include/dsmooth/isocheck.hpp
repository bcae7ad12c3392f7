#ifndef DSMOOTH_ISOCHECK_HPP
#define DSMOOTH_ISOCHECK_HPP

#include "dsmooth/graded_basis.hpp"
#include "dsmooth/linear_solve.hpp"
#include "dsmooth/modp.hpp"
#include "dsmooth/presentation.hpp"
#include "dsmooth/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dsmooth {

/// Degree-preserving algebra map given on generators: source generator i goes
/// to sum_k matrix[i][k] * (target generator k).
struct GradedMap {
  Presentation source;
  Presentation target;
  Matrix<ParamScalar> matrix;

  GradedMap(Presentation s, Presentation t, Matrix<ParamScalar> m)
      : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
    if (source.num_generators() != target.num_generators()) {
      throw std::invalid_argument("graded map: source has " + std::to_string(source.num_generators()) +
                                  " generators, target has " + std::to_string(target.num_generators()));
    }
    const std::size_t n = source.num_generators();
    if (matrix.size() != n) throw std::invalid_argument("graded map: matrix needs one row per source generator");
    for (const auto& row : matrix) {
      if (row.size() != n) throw std::invalid_argument("graded map: matrix rows need one entry per target generator");
    }
  }

  /// Identity on generators, or the generator permutation i -> perm[i].
  static GradedMap permutation(Presentation s, Presentation t, const std::vector<std::size_t>& perm) {
    const std::size_t n = s.num_generators();
    Matrix<ParamScalar> m(n, std::vector<ParamScalar>(n));
    for (std::size_t i = 0; i < n; ++i) m[i].at(perm.at(i)) = ParamScalar::one();
    return GradedMap(std::move(s), std::move(t), std::move(m));
  }

  Element<ParamScalar> image(std::uint8_t g) const {
    Element<ParamScalar> out;
    for (std::size_t k = 0; k < matrix.size(); ++k) out.add_term(Word{static_cast<std::uint8_t>(k)}, matrix[g][k]);
    return out;
  }

  /// Image of a free-algebra element of the source.
  Element<ParamScalar> apply(const Element<ParamScalar>& a) const {
    Element<ParamScalar> out;
    for (const auto& [w, c] : a.terms()) {
      Element<ParamScalar> t(c);
      for (auto l : w.letters()) t = t * image(l);
      out += t;
    }
    return out;
  }

  bool invertible() const { return matrix_rank(matrix) == matrix.size(); }

  /// The inverse matrix as a map from target to source.
  GradedMap inverse() const {
    const std::size_t n = matrix.size();
    // Row vectors: image(i) = e_i M, so the inverse map has matrix M^{-1}.
    // Solve M^T y = e_j column by column.
    Matrix<ParamScalar> mt(n, std::vector<ParamScalar>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) mt[k][i] = matrix[i][k];
    }
    Matrix<ParamScalar> inv(n, std::vector<ParamScalar>(n));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<ParamScalar> e(n);
      e[j] = ParamScalar::one();
      auto sol = solve_linear(mt, e);
      if (!sol.unique()) throw std::invalid_argument("graded map is not invertible");
      // sol.particular = column j of (M^T)^{-1} = row j of M^{-1}.
      inv[j] = sol.particular;
    }
    return GradedMap(target, source, std::move(inv));
  }

  std::vector<std::string> describe() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      out.push_back(source.generators[i] + " -> " + image(static_cast<std::uint8_t>(i)).to_string(target.generators));
    }
    return out;
  }
};

/// PASS iff the matrix is nonsingular and every source relation maps into
/// the degree-2 slice of the target ideal.
inline CheckReport verify_morphism(const GradedMap& m) {
  CheckReport rep;
  rep.id = "morphism";
  rep.summary = "generator images define a graded isomorphism " + m.source.name + " -> " + m.target.name;
  rep.details["map"] = m.describe();
  auto basis = GradedBasis<ParamScalar>::from(m.target, 2);
  rep.assumptions = nonzero_assumptions(basis.pivot_assumptions());
  for (const auto& rel : m.source.relations) {
    Element<ParamScalar> nf = basis.normal_form(m.apply(rel.element));
    if (!nf.is_zero()) {
      rep.fail({"image of a relation is not in the target ideal", rel.text, nf.to_string(m.target.generators), 2},
               "the map does not respect the relations");
      return rep;
    }
  }
  if (!m.invertible()) {
    rep.fail({"generator matrix is singular", "", "", 1}, "the map is not invertible");
  }
  return rep;
}

/// Cube-root-of-unity alphabet {0, 1, -1, w, -w, w^2, -w^2}.
inline std::vector<ParamScalar> default_alphabet() {
  const BaseScalar w = BaseScalar::omega();
  const BaseScalar w2 = w * w;
  return {ParamScalar(0L), ParamScalar(1L), ParamScalar(-1L), ParamScalar(w),
          ParamScalar(-w), ParamScalar(w2), ParamScalar(-w2)};
}

namespace modp {

/// Deterministic pseudo-random value for parameter `id`.
inline std::uint64_t parameter_value(unsigned id) {
  std::uint64_t z = 0x9e3779b97f4a7c15ULL * (id + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return (z ^ (z >> 31)) % P;
}

inline std::uint64_t reduce(const Polynomial& poly) {
  std::uint64_t sum = 0;
  for (const auto& [m, c] : poly.terms()) {
    std::uint64_t t = reduce(c);
    for (std::size_t i = 0; i < m.width(); ++i) {
      unsigned e = m.exponent(static_cast<unsigned>(i));
      if (e != 0) t = mul(t, power(parameter_value(static_cast<unsigned>(i)), e));
    }
    sum = add(sum, t);
  }
  return sum;
}

inline std::uint64_t reduce(const ParamScalar& s) {
  std::uint64_t den = reduce(s.denominator());
  if (den == 0) throw DivisionByZero("denominator of " + s.to_string() + " vanishes at the sample point");
  return mul(reduce(s.numerator()), inverse(den));
}

/// Rank of a dense matrix mod P.
inline std::size_t rank(std::vector<std::vector<std::uint64_t>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = inverse(a[r][c]);
    for (auto& v : a[r]) v = mul(v, inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = sub(a[i][j], mul(f, a[r][j]));
    }
    ++r;
  }
  return r;
}

/// Linear functionals on V (x) V (length n^2 each) whose common kernel is the
/// span of `rows`.
inline std::vector<std::vector<std::uint64_t>> annihilator(std::vector<std::vector<std::uint64_t>> a, std::size_t dim) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = inverse(a[r][c]);
    for (auto& v : a[r]) v = mul(v, inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < dim; ++j) a[i][j] = sub(a[i][j], mul(f, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  // For each free column j: L(v) = v_j - sum_rows v_pivot * a[row][j].
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t j = 0; j < dim; ++j) {
    if (std::find(pivots.begin(), pivots.end(), j) != pivots.end()) continue;
    std::vector<std::uint64_t> l(dim, 0);
    l[j] = 1;
    for (std::size_t row = 0; row < pivots.size(); ++row) l[pivots[row]] = sub(0, a[row][j]);
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace modp

struct SearchOptions {
  std::vector<ParamScalar> alphabet = default_alphabet();
  /// Upper bound on the number of candidate matrices scanned.
  std::uint64_t max_candidates = std::uint64_t{1} << 36;
  /// 0 selects the hardware concurrency.
  unsigned threads = 0;
};

struct SearchResult {
  std::optional<GradedMap> map;
  /// Row-major index of the map in base |alphabet| (entry (0,0) most significant).
  std::optional<std::uint64_t> index;
  std::uint64_t candidates = 0;
  /// Candidates that passed the modular filter and were checked exactly.
  std::uint64_t verified = 0;
};

/// Exhaustive scan of generator matrices with entries from the alphabet for
/// an isomorphism source -> target. Candidates are filtered modulo 2^61 - 1
/// (parameters sent to fixed pseudo-random residues) and the survivors are
/// verified exactly. The map with the smallest index wins.
inline SearchResult search_isomorphism(const Presentation& source, const Presentation& target,
                                       const SearchOptions& opt = {}) {
  validate(source);
  validate(target);
  const std::size_t n = source.num_generators();
  if (target.num_generators() != n) throw std::invalid_argument("search_isomorphism: alphabet sizes differ");
  const std::size_t na = opt.alphabet.size();
  if (na == 0) throw std::invalid_argument("search_isomorphism: empty entry alphabet");

  std::uint64_t rows_count = 1;  // candidate rows: na^n
  for (std::size_t i = 0; i < n; ++i) rows_count *= na;
  long double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<long double>(rows_count);
  if (total > static_cast<long double>(opt.max_candidates)) {
    throw std::invalid_argument("search_isomorphism: " + std::to_string(static_cast<double>(total)) +
                                " candidates exceed the limit of " + std::to_string(opt.max_candidates));
  }
  SearchResult result;
  result.candidates = static_cast<std::uint64_t>(total);

  std::vector<std::uint64_t> letter(na);
  for (std::size_t i = 0; i < na; ++i) letter[i] = modp::reduce(opt.alphabet[i]);
  // Row r as a vector mod P; row index digits are most significant first.
  std::vector<std::vector<std::uint64_t>> rowvec(rows_count, std::vector<std::uint64_t>(n));
  std::vector<bool> row_zero(rows_count);
  for (std::uint64_t r = 0; r < rows_count; ++r) {
    std::uint64_t x = r;
    bool zero = true;
    for (std::size_t k = n; k-- > 0;) {
      rowvec[r][k] = letter[x % na];
      zero = zero && rowvec[r][k] == 0;
      x /= na;
    }
    row_zero[r] = zero;
  }

  // Functionals cutting out the target's degree-2 relation space.
  const std::size_t dim2 = n * n;
  std::vector<std::vector<std::uint64_t>> trows;
  for (const auto& rel : target.relations) {
    std::vector<std::uint64_t> v(dim2, 0);
    for (const auto& [w, c] : rel.element.terms()) v[w[0] * n + w[1]] = modp::reduce(c);
    trows.push_back(std::move(v));
  }
  const auto funcs = modp::annihilator(trows, dim2);

  struct Term {
    std::size_t a, b;
    std::uint64_t c;
  };
  std::vector<std::vector<Term>> srels;
  for (const auto& rel : source.relations) {
    std::vector<Term> ts;
    for (const auto& [w, c] : rel.element.terms()) ts.push_back({w[0], w[1], modp::reduce(c)});
    srels.push_back(std::move(ts));
  }
  const std::size_t last = n - 1;

  // value(rel, L) = sum c_ab phi_a^T L phi_b. With the outer rows fixed this
  // is Q(phi_last) + u . phi_last + C; Q depends only on the candidate row.
  struct Constraint {
    std::size_t rel, func;
  };
  std::vector<Constraint> cons;
  for (std::size_t i = 0; i < srels.size(); ++i) {
    for (std::size_t j = 0; j < funcs.size(); ++j) cons.push_back({i, j});
  }
  auto bilinear = [&](const std::vector<std::uint64_t>& l, const std::vector<std::uint64_t>& x,
                      const std::vector<std::uint64_t>& y) {
    std::uint64_t s = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (x[p] == 0) continue;
      std::uint64_t inner = 0;
      for (std::size_t q = 0; q < n; ++q) {
        if (y[q] != 0) inner = modp::add(inner, modp::mul(l[p * n + q], y[q]));
      }
      s = modp::add(s, modp::mul(x[p], inner));
    }
    return s;
  };
  std::vector<std::vector<std::uint64_t>> quad(cons.size(), std::vector<std::uint64_t>(rows_count, 0));
  for (std::size_t ci = 0; ci < cons.size(); ++ci) {
    std::uint64_t cll = 0;
    for (const auto& t : srels[cons[ci].rel]) {
      if (t.a == last && t.b == last) cll = modp::add(cll, t.c);
    }
    if (cll == 0) continue;
    for (std::uint64_t r = 0; r < rows_count; ++r) {
      quad[ci][r] = modp::mul(cll, bilinear(funcs[cons[ci].func], rowvec[r], rowvec[r]));
    }
  }

  std::uint64_t outer_count = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) outer_count *= rows_count;
  const std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};
  std::atomic<std::uint64_t> verified{0};

  auto make_map = [&](std::uint64_t index) {
    Matrix<ParamScalar> m(n, std::vector<ParamScalar>(n));
    std::uint64_t x = index;
    for (std::size_t pos = n * n; pos-- > 0;) {
      m[pos / n][pos % n] = opt.alphabet[x % na];
      x /= na;
    }
    return GradedMap(source, target, std::move(m));
  };

  auto worker = [&](unsigned tid, unsigned nthreads) {
    std::vector<std::size_t> outer_rows(n - 1);
    std::vector<std::uint64_t> u(n), constant(cons.size());
    std::vector<std::vector<std::uint64_t>> lin(cons.size(), std::vector<std::uint64_t>(n));
    for (std::uint64_t o = tid; o < outer_count; o += nthreads) {
      if (o * rows_count >= best.load(std::memory_order_relaxed)) return;
      std::uint64_t x = o;
      bool zero_row = false;
      for (std::size_t i = n - 1; i-- > 0;) {
        outer_rows[i] = x % rows_count;
        zero_row = zero_row || row_zero[outer_rows[i]];
        x /= rows_count;
      }
      if (zero_row) continue;
      auto phi = [&](std::size_t a) -> const std::vector<std::uint64_t>& { return rowvec[outer_rows[a]]; };
      for (std::size_t ci = 0; ci < cons.size(); ++ci) {
        const auto& l = funcs[cons[ci].func];
        std::uint64_t c0 = 0;
        std::fill(lin[ci].begin(), lin[ci].end(), 0);
        for (const auto& t : srels[cons[ci].rel]) {
          if (t.a != last && t.b != last) {
            c0 = modp::add(c0, modp::mul(t.c, bilinear(l, phi(t.a), phi(t.b))));
          } else if (t.a == last && t.b != last) {
            const auto& y = phi(t.b);
            for (std::size_t p = 0; p < n; ++p) {
              std::uint64_t s = 0;
              for (std::size_t q = 0; q < n; ++q) s = modp::add(s, modp::mul(l[p * n + q], y[q]));
              lin[ci][p] = modp::add(lin[ci][p], modp::mul(t.c, s));
            }
          } else if (t.a != last && t.b == last) {
            const auto& y = phi(t.a);
            for (std::size_t q = 0; q < n; ++q) {
              std::uint64_t s = 0;
              for (std::size_t p = 0; p < n; ++p) s = modp::add(s, modp::mul(y[p], l[p * n + q]));
              lin[ci][q] = modp::add(lin[ci][q], modp::mul(t.c, s));
            }
          }
        }
        constant[ci] = c0;
      }
      for (std::uint64_t r = 0; r < rows_count; ++r) {
        if (row_zero[r]) continue;
        const auto& v = rowvec[r];
        bool ok = true;
        for (std::size_t ci = 0; ci < cons.size() && ok; ++ci) {
          std::uint64_t val = modp::add(quad[ci][r], constant[ci]);
          for (std::size_t p = 0; p < n; ++p) val = modp::add(val, modp::mul(lin[ci][p], v[p]));
          ok = val == 0;
        }
        if (!ok) continue;
        std::vector<std::vector<std::uint64_t>> mat;
        for (std::size_t a = 0; a + 1 < n; ++a) mat.push_back(phi(a));
        mat.push_back(v);
        if (modp::rank(mat) != n) continue;
        const std::uint64_t index = o * rows_count + r;
        verified.fetch_add(1, std::memory_order_relaxed);
        if (!verify_morphism(make_map(index)).passed()) continue;
        std::uint64_t cur = best.load();
        while (index < cur && !best.compare_exchange_weak(cur, index)) {
        }
        return;
      }
    }
  };

  unsigned nthreads = opt.threads != 0 ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  nthreads = static_cast<unsigned>(std::min<std::uint64_t>(nthreads, outer_count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker, t, nthreads);
  worker(0, nthreads);
  for (auto& th : pool) th.join();

  result.verified = verified.load();
  if (best.load() != none) {
    result.index = best.load();
    result.map = make_map(*result.index);
  }
  return result;
}

}  // namespace dsmooth

#endif  // DSMOOTH_ISOCHECK_HPP
