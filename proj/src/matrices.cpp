#include "trackpow/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trackpow/error.hpp"

namespace trackpow {

  IntMatrix::IntMatrix(std::vector<std::vector<long long>> const& rows)
      : IntMatrix(rows.size()) {
    for (std::size_t i = 0; i < _n; ++i) {
      if (rows[i].size() != _n) {
        fail(ErrorKind::precondition, "matrix is not square");
      }
      for (std::size_t j = 0; j < _n; ++j) {
        (*this)(i, j) = rows[i][j];
      }
    }
  }

  IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  IntMatrix IntMatrix::operator*(IntMatrix const& that) const {
    if (_n != that._n) {
      fail(ErrorKind::mismatch, "matrix sizes differ");
    }
    IntMatrix out(_n);
    for (std::size_t i = 0; i < _n; ++i) {
      for (std::size_t k = 0; k < _n; ++k) {
        auto const& a = (*this)(i, k);
        if (a == 0) {
          continue;
        }
        for (std::size_t j = 0; j < _n; ++j) {
          out(i, j) += a * that(k, j);
        }
      }
    }
    return out;
  }

  IntMatrix IntMatrix::transpose() const {
    IntMatrix out(_n);
    for (std::size_t i = 0; i < _n; ++i) {
      for (std::size_t j = 0; j < _n; ++j) {
        out(j, i) = (*this)(i, j);
      }
    }
    return out;
  }

  IntMatrix IntMatrix::pow(unsigned p) const {
    IntMatrix result = identity(_n);
    IntMatrix base   = *this;
    while (p > 0) {
      if (p & 1u) {
        result = result * base;
      }
      p >>= 1;
      if (p > 0) {
        base = base * base;
      }
    }
    return result;
  }

  Integer IntMatrix::trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < _n; ++i) {
      t += (*this)(i, i);
    }
    return t;
  }

  Integer IntMatrix::determinant() const {
    if (_n == 0) {
      return 1;
    }
    IntMatrix a    = *this;
    Integer   prev = 1;
    int       sign = 1;
    for (std::size_t k = 0; k + 1 < _n; ++k) {
      if (a(k, k) == 0) {
        std::size_t swap = k + 1;
        while (swap < _n && a(swap, k) == 0) {
          ++swap;
        }
        if (swap == _n) {
          return 0;
        }
        for (std::size_t j = 0; j < _n; ++j) {
          std::swap(a(k, j), a(swap, j));
        }
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < _n; ++i) {
        for (std::size_t j = k + 1; j < _n; ++j) {
          a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        }
      }
      prev = a(k, k);
    }
    return sign * a(_n - 1, _n - 1);
  }

  bool IntMatrix::is_zero() const {
    return std::all_of(_entries.begin(), _entries.end(), [](Integer const& x) { return x == 0; });
  }

  std::vector<std::vector<std::string>> IntMatrix::to_strings() const {
    std::vector<std::vector<std::string>> rows(_n);
    for (std::size_t i = 0; i < _n; ++i) {
      for (std::size_t j = 0; j < _n; ++j) {
        rows[i].push_back((*this)(i, j).str());
      }
    }
    return rows;
  }

  std::string IntMatrix::to_string() const {
    std::ostringstream out;
    for (auto const& row : to_strings()) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        out << (j ? " " : "") << row[j];
      }
      out << '\n';
    }
    return out.str();
  }

  NonnegIntMatrix::NonnegIntMatrix(IntMatrix m) : _m(std::move(m)) {
    for (std::size_t i = 0; i < _m.size(); ++i) {
      for (std::size_t j = 0; j < _m.size(); ++j) {
        if (_m(i, j) < 0) {
          fail(ErrorKind::precondition, "matrix has a negative entry");
        }
      }
    }
  }

  namespace {
    using BoolMatrix = std::vector<std::vector<bool>>;

    BoolMatrix support(NonnegIntMatrix const& m) {
      auto       n = m.size();
      BoolMatrix b(n, std::vector<bool>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          b[i][j] = m(i, j) != 0;
        }
      }
      return b;
    }

    BoolMatrix bool_product(BoolMatrix const& x, BoolMatrix const& y) {
      auto       n = x.size();
      BoolMatrix z(n, std::vector<bool>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          if (!x[i][k]) {
            continue;
          }
          for (std::size_t j = 0; j < n; ++j) {
            if (y[k][j]) {
              z[i][j] = true;
            }
          }
        }
      }
      return z;
    }

    bool all_true(BoolMatrix const& b) {
      return std::all_of(b.begin(), b.end(), [](auto const& row) {
        return std::all_of(row.begin(), row.end(), [](bool x) { return x; });
      });
    }

    std::size_t reach_count(BoolMatrix const& b, bool forward) {
      auto              n = b.size();
      std::vector<bool> seen(n);
      std::vector<std::size_t> stack{0};
      seen[0]           = true;
      std::size_t count = 1;
      while (!stack.empty()) {
        auto i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j) {
          bool edge = forward ? b[i][j] : b[j][i];
          if (edge && !seen[j]) {
            seen[j] = true;
            ++count;
            stack.push_back(j);
          }
        }
      }
      return count;
    }

    std::size_t wielandt_bound(std::size_t n) {
      return n * n - 2 * n + 2;
    }
  }  // namespace

  bool is_irreducible(NonnegIntMatrix const& m) {
    auto n = m.size();
    if (n == 0) {
      return false;
    }
    auto b = support(m);
    return reach_count(b, true) == n && reach_count(b, false) == n;
  }

  bool is_primitive(NonnegIntMatrix const& m) {
    if (m.size() == 0) {
      return false;
    }
    // Once M^p > 0 for a primitive M, every higher power is positive too, so
    // it suffices to look at one power at or beyond the Wielandt bound.
    auto        b = support(m);
    std::size_t p = 1;
    while (p < wielandt_bound(m.size())) {
      b = bool_product(b, b);
      p *= 2;
    }
    return all_true(b);
  }

  std::optional<unsigned> primitivity_exponent(NonnegIntMatrix const& m) {
    if (m.size() == 0) {
      return std::nullopt;
    }
    auto const base  = support(m);
    auto       power = base;
    for (std::size_t p = 1; p <= wielandt_bound(m.size()); ++p) {
      if (all_true(power)) {
        return static_cast<unsigned>(p);
      }
      power = bool_product(power, base);
    }
    return std::nullopt;
  }

  bool is_transitive_permutation(NonnegIntMatrix const& m) {
    auto n = m.size();
    if (n == 0) {
      return false;
    }
    std::vector<std::size_t> next(n, n);
    std::vector<bool>        hit(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m(i, j) == 0) {
          continue;
        }
        if (m(i, j) != 1 || next[i] != n || hit[j]) {
          return false;
        }
        next[i] = j;
        hit[j]  = true;
      }
      if (next[i] == n) {
        return false;
      }
    }
    std::size_t i = 0, len = 0;
    do {
      i = next[i];
      ++len;
    } while (i != 0);
    return len == n;
  }

  PFResult pf_eigenvalue(NonnegIntMatrix const& m, PFOptions const& opts) {
    if (!is_irreducible(m)) {
      fail(ErrorKind::precondition, "pf_eigenvalue needs an irreducible matrix");
    }
    auto const                       n = m.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] = m(i, j).convert_to<double>();
      }
    }
    auto apply = [&](std::vector<double> const& v) {
      std::vector<double> out(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          out[i] += a[i][j] * v[j];
        }
      }
      return out;
    };

    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    double              lambda = 0, residual = 0;
    for (unsigned it = 0; it <= opts.max_iterations; ++it) {
      auto mv = apply(v);
      lambda  = 0;
      for (double x : mv) {
        lambda += x;
      }
      residual = 0;
      for (std::size_t i = 0; i < n; ++i) {
        residual = std::max(residual, std::abs(mv[i] - lambda * v[i]));
      }
      if (residual < opts.tol) {
        return {lambda, v, residual, it};
      }
      double total = 0;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] += mv[i];
        total += v[i];
      }
      for (double& x : v) {
        x /= total;
      }
    }
    std::ostringstream msg;
    msg << "power iteration did not converge after " << opts.max_iterations
        << " iterations (lambda~" << lambda << ", residual " << residual << ", iterate";
    for (double x : v) {
      msg << ' ' << x;
    }
    msg << ')';
    fail(ErrorKind::convergence, msg.str());
  }

}  // namespace trackpow
