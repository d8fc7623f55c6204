#include "trackpow/automorphisms.hpp"

#include <cmath>

#include "trackpow/error.hpp"

namespace trackpow {

  BasisMap::BasisMap(Alphabet basis, std::vector<GroupWord> images)
      : _basis(std::move(basis)), _images(std::move(images)) {
    if (_images.size() != _basis.rank()) {
      fail(ErrorKind::precondition, "one image per basis letter expected");
    }
    for (auto const& img : _images) {
      for (Letter y : img.letters()) {
        if (!_basis.contains(y)) {
          fail(ErrorKind::precondition, "image leaves the basis alphabet");
        }
      }
    }
  }

  BasisMap BasisMap::identity(Alphabet basis) {
    std::vector<GroupWord> images;
    for (std::size_t i = 0; i < basis.rank(); ++i) {
      images.push_back(GroupWord::from_reduced({positive_letter(i)}));
    }
    return BasisMap(std::move(basis), std::move(images));
  }

  GroupWord BasisMap::image(Letter x) const {
    auto const& img = _images.at(pair_index(x));
    return is_positive(x) ? img : inverse(img);
  }

  GroupWord BasisMap::apply(std::span<Letter const> w, std::size_t cap) const {
    // Reduce incrementally so that cancellation keeps the working word short.
    Word stack;
    for (Letter x : w) {
      auto const& img = _images.at(pair_index(x)).letters();
      auto        push = [&](Letter y) {
        if (!stack.empty() && stack.back() == inverse(y)) {
          stack.pop_back();
        } else {
          stack.push_back(y);
          if (stack.size() > cap) {
            fail(ErrorKind::limit,
                 "image length exceeds the cap of " + std::to_string(cap) + " letters");
          }
        }
      };
      if (is_positive(x)) {
        for (Letter y : img) {
          push(y);
        }
      } else {
        for (auto it = img.rbegin(); it != img.rend(); ++it) {
          push(inverse(*it));
        }
      }
    }
    return GroupWord::from_reduced(std::move(stack));
  }

  BasisMap compose(BasisMap const& outer, BasisMap const& inner) {
    if (!(outer.basis() == inner.basis())) {
      fail(ErrorKind::mismatch, "basis maps over different bases");
    }
    std::vector<GroupWord> images;
    for (auto const& img : inner.images()) {
      images.push_back(outer.apply(img.letters()));
    }
    return BasisMap(outer.basis(), std::move(images));
  }

  BasisMap power(BasisMap const& phi, unsigned p) {
    auto result = BasisMap::identity(phi.basis());
    auto base   = phi;
    while (p > 0) {
      if (p & 1u) {
        result = compose(result, base);
      }
      p >>= 1;
      if (p > 0) {
        base = compose(base, base);
      }
    }
    return result;
  }

  bool verify_automorphism(BasisMap const& phi, BasisMap const& phi_inv) {
    if (!(phi.basis() == phi_inv.basis())) {
      return false;
    }
    auto id = BasisMap::identity(phi.basis());
    return compose(phi, phi_inv) == id && compose(phi_inv, phi) == id;
  }

  IntMatrix abelianization(BasisMap const& phi) {
    IntMatrix m(phi.rank());
    for (std::size_t j = 0; j < phi.rank(); ++j) {
      for (Letter y : phi.images()[j].letters()) {
        m(pair_index(y), j) += is_positive(y) ? 1 : -1;
      }
    }
    return m;
  }

  char const* to_string(Growth g) noexcept {
    return g == Growth::exponential ? "exponential" : "polynomial";
  }

  Growth growth_rank2(BasisMap const& phi) {
    if (phi.rank() != 2) {
      fail(ErrorKind::precondition, "the trace criterion needs rank 2");
    }
    auto m   = abelianization(phi);
    auto det = m.determinant();
    if (abs(det) != 1) {
      fail(ErrorKind::precondition,
           "abelianization has determinant " + det.str() + ", not an automorphism");
    }
    return abs((m * m).trace()) > 2 ? Growth::exponential : Growth::polynomial;
  }

  Integer polynomial_order_bound(unsigned r, unsigned n) {
    if (r < 1 || n < 1) {
      fail(ErrorKind::precondition, "rank and exponent must be positive");
    }
    Integer exponent = 2 * ((Integer(1) << (r - 1)) - 1);
    Integer result   = 1;
    for (Integer i = 0; i < exponent; ++i) {
      result *= n;
    }
    return result;
  }

  GrowthEstimate growth_rate_estimate(BasisMap const&  phi,
                                      GroupWord const& g,
                                      std::size_t      depth,
                                      std::size_t      cap) {
    if (g.empty()) {
      fail(ErrorKind::precondition, "growth of the trivial element");
    }
    if (depth < 2) {
      fail(ErrorKind::precondition, "growth estimate needs depth >= 2");
    }
    GrowthEstimate out{};
    // Conjugation does not change ||.||, so iterating on the cyclic core is
    // enough and keeps words short.
    auto current = cyclic_reduce(g);
    out.lengths.push_back(current.size());
    for (std::size_t p = 1; p <= depth; ++p) {
      current = cyclic_reduce(phi.apply(current.letters(), cap));
      out.lengths.push_back(current.size());
    }
    auto last = static_cast<double>(out.lengths[depth]);
    auto prev = static_cast<double>(out.lengths[depth - 1]);
    out.root_estimate  = std::pow(last, 1.0 / static_cast<double>(depth));
    out.ratio_estimate = prev > 0 ? last / prev : 0.0;
    return out;
  }

  BasisMap trace_family_member(unsigned n) {
    auto const alphabet = Alphabet::standard(2);
    Letter     a = positive_letter(0), b = positive_letter(1);
    Word       ban{b};
    ban.insert(ban.end(), n, a);
    Word phi_a{a};
    auto body = repeat(ban, n);
    phi_a.insert(phi_a.end(), body.begin(), body.end());
    return BasisMap(alphabet, {reduce(phi_a), reduce(ban)});
  }

}  // namespace trackpow
