#include "monotor/cech.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <iterator>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "monotor/errors.hpp"

namespace monotor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::size_t kMaxSequence = 20;
constexpr unsigned long kMaxBoxPoints = 20'000'000UL;

std::uint64_t mask_of(const Exponent& e) { return e.support_mask(); }

// X^λ with the coordinates in `mask` dropped; these are the ones a
// saturation by a monomial supported on `mask` no longer sees.
Exponent off_support(const LaurentExponent& lambda, std::uint64_t mask) {
  Exponent y(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (!(mask >> i & 1U) && lambda[i] > 0) y[i] = static_cast<Exponent::value_type>(lambda[i]);
  return y;
}

bool touches_box(const LaurentExponent& lambda, unsigned box) {
  return std::any_of(lambda.begin(), lambda.end(),
                     [box](long v) { return static_cast<unsigned long>(v < 0 ? -v : v) == box; });
}

// Everything about (M, a_1..a_s, box) that does not depend on the degree:
// saturations of c by the monomials a_J and the box points bucketed by degree.
class Engine {
 public:
  Engine(const GradedModule& m, const std::vector<Exponent>& seq, unsigned box) : m_(m), seq_(seq), box_(box) {
    const std::size_t n = m.num_vars();
    if (seq.size() > kMaxSequence) throw DomainError("Čech sequence longer than 20 elements");
    for (const auto& a : seq) {
      if (a.size() != n) throw DimensionMismatch("sequence monomial has the wrong number of variables");
      if (m.restriction() && !m.restriction()->contains(m.ring().degree_vector(a)))
        throw DomainError("sequence monomial does not lie in the restricted ring");
    }
    if (n > 64) throw DomainError("at most 64 variables are supported");

    const std::uint32_t subsets = 1U << seq.size();
    supp_.resize(subsets);
    sat_index_.resize(subsets);
    std::map<std::uint64_t, std::size_t> by_mask;
    for (std::uint32_t j = 0; j < subsets; ++j) {
      Exponent a_j(n);
      for (std::size_t k = 0; k < seq.size(); ++k)
        if (j >> k & 1U) a_j = a_j + seq[k];
      supp_[j] = mask_of(a_j);
      auto [it, fresh] = by_mask.emplace(supp_[j], sats_.size());
      if (fresh) {
        if (a_j.is_zero())
          sats_.push_back(m.quotient());
        else
          sats_.push_back(saturation(m.quotient(), MonomialIdeal::minimalize({a_j}, n)));
      }
      sat_index_[j] = it->second;
    }
    bucket_points();
  }

  const std::vector<LaurentExponent>* points(const IntVector& g) const {
    auto it = buckets_.find(m_.ring().group().reduce(g));
    return it == buckets_.end() ? nullptr : &it->second;
  }

  bool cell_present(const LaurentExponent& lambda, std::uint64_t negative, std::uint32_t j) const {
    if (negative & ~supp_[j]) return false;
    return !contains_monomial(sats_[sat_index_[j]], off_support(lambda, supp_[j]));
  }

  std::optional<CechBlock> block(const LaurentExponent& lambda) const {
    const std::size_t s = seq_.size();
    std::uint64_t negative = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
      if (lambda[i] < 0) negative |= std::uint64_t{1} << i;

    CechBlock b;
    b.weight = lambda;
    b.cells.resize(s + 1);
    bool any = false;
    for (std::uint32_t j = 0; j < (1U << s); ++j) {
      if (!cell_present(lambda, negative, j)) continue;
      b.cells[std::popcount(j)].push_back(j);
      any = true;
    }
    if (!any) return std::nullopt;

    for (std::size_t i = 0; i < s; ++i) {
      const auto& src = b.cells[i];
      const auto& dst = b.cells[i + 1];
      IntMatrix d(dst.size(), src.size());
      for (std::size_t c = 0; c < src.size(); ++c) {
        for (std::size_t k = 0; k < s; ++k) {
          if (src[c] >> k & 1U) continue;
          auto it = std::lower_bound(dst.begin(), dst.end(), src[c] | (1U << k));
          if (it == dst.end() || *it != (src[c] | (1U << k))) continue;
          d(static_cast<std::size_t>(it - dst.begin()), c) = cech_sign(src[c], k);
        }
      }
      b.differentials.push_back(std::move(d));
    }
    return b;
  }

  std::size_t sequence_length() const { return seq_.size(); }
  unsigned box() const { return box_; }

 private:
  void bucket_points() {
    const std::size_t n = m_.num_vars();
    std::uint64_t invertible = 0;
    for (auto mask : supp_) invertible |= mask;

    std::vector<long> lo(n), hi(n, static_cast<long>(box_));
    unsigned long total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = (invertible >> i & 1U) ? -static_cast<long>(box_) : 0;
      total *= static_cast<unsigned long>(hi[i] - lo[i] + 1);
      if (total > kMaxBoxPoints) throw DomainError("Čech box too large; lower --box");
    }

    const IntMatrix& psi = m_.ring().psi();
    const std::size_t r = psi.rows();
    // psi as machine integers; degrees are recomputed in GMP only for the
    // final reduction.
    std::vector<std::vector<long>> cols(n, std::vector<long>(r));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < r; ++k) {
        if (!psi(k, i).fits_slong_p()) throw DomainError("degree entries too large");
        cols[i][k] = psi(k, i).get_si();
      }
    IntVector shift = m_.shift().value_or(IntVector(r, Integer(0)));

    LaurentExponent lambda(lo);
    IntVector deg(r);
    for (;;) {
      std::vector<long> acc(r, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < r; ++k) acc[k] += cols[i][k] * lambda[i];
      for (std::size_t k = 0; k < r; ++k) deg[k] = Integer(acc[k]);
      if (!m_.restriction() || m_.restriction()->contains(deg)) {
        for (std::size_t k = 0; k < r; ++k) deg[k] -= shift[k];
        buckets_[m_.ring().group().reduce(deg)].push_back(lambda);
      }
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (lambda[i] < hi[i]) {
          ++lambda[i];
          break;
        }
        lambda[i] = lo[i];
      }
      if (i == n) break;
    }
    for (auto& [_, pts] : buckets_) std::sort(pts.begin(), pts.end());
  }

  const GradedModule& m_;
  std::vector<Exponent> seq_;
  unsigned box_;
  std::vector<std::uint64_t> supp_;
  std::vector<std::size_t> sat_index_;
  std::vector<MonomialIdeal> sats_;
  std::map<IntVector, std::vector<LaurentExponent>> buckets_;
};

std::vector<CechBlock> blocks_at(const Engine& engine, const IntVector& g) {
  std::vector<CechBlock> out;
  if (const auto* pts = engine.points(g))
    for (const auto& lambda : *pts)
      if (auto b = engine.block(lambda)) out.push_back(std::move(*b));
  return out;
}

bool blocks_touch_box(const std::vector<CechBlock>& blocks, unsigned box) {
  return std::any_of(blocks.begin(), blocks.end(), [box](const CechBlock& b) { return touches_box(b.weight, box); });
}

struct RankData {
  std::size_t rank = 0;
  IntVector torsion;  // diagonal entries > 1
};

RankData rank_of(const IntMatrix& d, Coefficients coeffs) {
  RankData out;
  if (d.empty()) return out;
  const SmithForm snf = smith_normal_form(d);
  for (const auto& v : snf.diagonal()) {
    if (v == 0) continue;
    if (coeffs.kind == Coefficients::Kind::field && coeffs.characteristic != 0) {
      if (v % coeffs.characteristic != 0) ++out.rank;
      continue;
    }
    ++out.rank;
    if (coeffs.kind == Coefficients::Kind::integers && abs(v) > 1) out.torsion.push_back(abs(v));
  }
  return out;
}

DegreeCohomology cohomology_from_blocks(const IntVector& g, const std::vector<CechBlock>& blocks, std::size_t s,
                                        unsigned box, Coefficients coeffs) {
  DegreeCohomology out;
  out.degree = g;
  out.groups.assign(s + 1, {});
  out.cochain_dims.assign(s + 1, 0);
  // a block's cohomology depends only on which cells are present, and few
  // distinct patterns occur in one slice
  std::map<std::vector<std::vector<std::uint32_t>>, std::vector<CohomologyGroup>> seen;
  for (const auto& b : blocks) {
    auto [it, fresh] = seen.try_emplace(b.cells);
    if (fresh) {
      std::vector<RankData> ranks;
      for (const auto& d : b.differentials) ranks.push_back(rank_of(d, coeffs));
      it->second.assign(s + 1, {});
      for (std::size_t i = 0; i <= s; ++i) {
        std::size_t h = b.cells[i].size();
        if (i < s) h -= ranks[i].rank;
        if (i > 0) {
          h -= ranks[i - 1].rank;
          it->second[i].torsion = ranks[i - 1].torsion;
        }
        it->second[i].rank = h;
      }
    }
    for (std::size_t i = 0; i <= s; ++i) {
      out.cochain_dims[i] += b.cells[i].size();
      out.groups[i].rank += it->second[i].rank;
      auto& t = out.groups[i].torsion;
      t.insert(t.end(), it->second[i].torsion.begin(), it->second[i].torsion.end());
    }
  }
  for (auto& grp : out.groups) std::sort(grp.torsion.begin(), grp.torsion.end());
  out.truncated = blocks_touch_box(blocks, box);
  return out;
}

DegreeCohomology cohomology_with_check(const Engine& inner, const Engine& outer, const IntVector& g,
                                       Coefficients coeffs) {
  const std::size_t s = inner.sequence_length();
  DegreeCohomology out = cohomology_from_blocks(g, blocks_at(inner, g), s, inner.box(), coeffs);
  DegreeCohomology wider = cohomology_from_blocks(g, blocks_at(outer, g), s, outer.box(), coeffs);
  out.exact = out.groups == wider.groups;
  return out;
}

}  // namespace

Coefficients coefficients_for(const BaseRingDescriptor& base) {
  validate(base);
  return std::visit(overloaded{
                        [](const base_ring::Field& f) { return Coefficients{Coefficients::Kind::field, f.characteristic}; },
                        [](const base_ring::Integers&) { return Coefficients::integers(); },
                        [](const auto&) -> Coefficients { throw DomainError("unsupported base ring"); },
                    },
                    base);
}

GradedModule::GradedModule(GradedRing ring, MonomialIdeal quotient, std::optional<IntVector> shift)
    : ring_(std::move(ring)), quotient_(std::move(quotient)), shift_(std::move(shift)) {
  if (quotient_.num_vars() != ring_.num_vars()) throw DimensionMismatch("quotient ideal and ring differ");
  if (shift_ && shift_->size() != ring_.group().ambient_rank())
    throw DimensionMismatch("shift has the wrong length for the grading group");
}

GradedModule::GradedModule(RestrictedRing ring, MonomialIdeal quotient, std::optional<IntVector> shift)
    : GradedModule(ring.base(), std::move(quotient), std::move(shift)) {
  restriction_ = ring.subgroup();
}

IntVector GradedModule::degree_of(const LaurentExponent& lambda) const {
  if (lambda.size() != num_vars()) throw DimensionMismatch("exponent length does not match the ring");
  const IntMatrix& psi = ring_.psi();
  IntVector out(psi.rows(), Integer(0));
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t r = 0; r < psi.rows(); ++r) out[r] += psi(r, i) * lambda[i];
  if (shift_)
    for (std::size_t r = 0; r < out.size(); ++r) out[r] -= (*shift_)[r];
  return ring_.group().reduce(out);
}

bool GradedModule::degree_allowed(const IntVector& g) const {
  if (!restriction_) return true;
  IntVector v = g;
  if (shift_)
    for (std::size_t r = 0; r < v.size(); ++r) v[r] += (*shift_)[r];
  return restriction_->contains(v);
}

LocalizationBasis localization_basis(const GradedModule& m, const Exponent& t, const IntVector& g, unsigned box) {
  LocalizationBasis out;
  if (!m.degree_allowed(g)) return out;
  Engine engine(m, {t}, box);
  if (const auto* pts = engine.points(g)) {
    for (const auto& lambda : *pts) {
      std::uint64_t negative = 0;
      for (std::size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] < 0) negative |= std::uint64_t{1} << i;
      if (!engine.cell_present(lambda, negative, 1U)) continue;
      out.truncated = out.truncated || touches_box(lambda, box);
      out.monomials.push_back(lambda);
    }
  }
  return out;
}

int cech_sign(std::uint32_t subset, std::size_t j) {
  const std::uint32_t below = subset & ((1U << j) - 1U);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

CechSlice::CechSlice(std::vector<Exponent> sequence, IntVector degree, std::vector<CechBlock> blocks, bool truncated)
    : sequence_(std::move(sequence)), degree_(std::move(degree)), blocks_(std::move(blocks)), truncated_(truncated) {}

std::vector<std::pair<std::uint32_t, LaurentExponent>> CechSlice::basis(std::size_t i) const {
  std::vector<std::pair<std::uint32_t, LaurentExponent>> out;
  if (i >= positions()) return out;
  for (const auto& b : blocks_)
    for (auto j : b.cells[i]) out.emplace_back(j, b.weight);
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix CechSlice::assembled_differential(std::size_t i) const {
  const auto src = basis(i);
  const auto dst = basis(i + 1);
  IntMatrix d(dst.size(), src.size());
  auto index_of = [](const auto& list, std::uint32_t j, const LaurentExponent& w) {
    auto it = std::lower_bound(list.begin(), list.end(), std::make_pair(j, w));
    return static_cast<std::size_t>(it - list.begin());
  };
  if (i + 1 >= positions()) return d;
  for (const auto& b : blocks_) {
    const IntMatrix& local = b.differentials[i];
    for (std::size_t r = 0; r < local.rows(); ++r)
      for (std::size_t c = 0; c < local.cols(); ++c)
        if (local(r, c) != 0)
          d(index_of(dst, b.cells[i + 1][r], b.weight), index_of(src, b.cells[i][c], b.weight)) = local(r, c);
  }
  return d;
}

CechSlice cech_slice(const GradedModule& m, const std::vector<Exponent>& sequence, const IntVector& g, unsigned box) {
  Engine engine(m, sequence, box);
  IntVector canonical = m.ring().group().reduce(g);
  std::vector<CechBlock> blocks = m.degree_allowed(canonical) ? blocks_at(engine, canonical) : std::vector<CechBlock>{};
  const bool truncated = blocks_touch_box(blocks, box);
  return CechSlice(sequence, std::move(canonical), std::move(blocks), truncated);
}

bool DegreeCohomology::nonzero() const {
  return std::any_of(groups.begin(), groups.end(), [](const CohomologyGroup& h) { return !h.is_zero(); });
}

CohomologyGroup DegreeCohomology::group(long i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= groups.size()) return {};
  return groups[static_cast<std::size_t>(i)];
}

DegreeCohomology cech_cohomology_degree(const GradedModule& m, const std::vector<Exponent>& sequence,
                                        const IntVector& g, unsigned box, Coefficients coeffs) {
  return degsupp_window(m, sequence, {g}, box, coeffs).degrees.front();
}

unsigned worker_count() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MONOTOR_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n;
}

CohomologyReport degsupp_window(const GradedModule& m, const std::vector<Exponent>& sequence,
                                const std::vector<IntVector>& window, unsigned box, Coefficients coeffs) {
  for (const auto& g : window)
    if (g.size() != m.ring().group().ambient_rank()) throw DimensionMismatch("window degree has the wrong length");
  const Engine inner(m, sequence, box);
  const Engine outer(m, sequence, box + 1);

  CohomologyReport report;
  report.degrees.resize(window.size());
  auto work = [&](std::size_t k) {
    IntVector g = m.ring().group().reduce(window[k]);
    if (!m.degree_allowed(g)) {
      DegreeCohomology empty;
      empty.degree = g;
      empty.groups.assign(sequence.size() + 1, {});
      empty.cochain_dims.assign(sequence.size() + 1, 0);
      empty.exact = true;
      report.degrees[k] = std::move(empty);
      return;
    }
    report.degrees[k] = cohomology_with_check(inner, outer, g, coeffs);
  };

  const unsigned workers = std::min<std::size_t>(worker_count(), window.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < window.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < window.size();) {
          try {
            work(k);
          } catch (...) {
            std::lock_guard lock(failure_lock);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (const auto& d : report.degrees) (d.nonzero() ? report.degsupp : report.flat_eligible).push_back(d.degree);
  return report;
}

bool presentation_is_flat(const IntMatrix& presentation) {
  if (presentation.empty()) return true;
  const SmithForm snf = smith_normal_form(presentation);
  const IntVector diag = snf.diagonal();
  return std::all_of(diag.begin(), diag.end(), [](const Integer& v) { return v == 0 || abs(v) == 1; });
}

PieceFlatness flatness_check_piece(const GradedModule& m, const IntVector& g, unsigned box, Coefficients) {
  PieceFlatness out;
  if (!m.degree_allowed(g)) return out;
  // Monomials X^λ, λ >= 0, outside c form a Z-basis of M_g, so the piece is
  // free with an empty presentation.
  Engine engine(m, {}, box);
  if (const auto* pts = engine.points(g)) {
    for (const auto& lambda : *pts) {
      if (!engine.cell_present(lambda, 0, 0)) continue;
      ++out.rank;
      out.truncated = out.truncated || touches_box(lambda, box);
    }
  }
  out.flat = presentation_is_flat(IntMatrix(out.rank, 0));
  return out;
}

bool h0_equals_torsion(const GradedModule& m, const std::vector<Exponent>& sequence,
                       const std::vector<IntVector>& window, unsigned box) {
  const Engine engine(m, sequence, box);
  const std::size_t n = m.num_vars();
  std::vector<Exponent> seq_gens;
  for (const auto& a : sequence) seq_gens.push_back(a);
  const MonomialIdeal torsion_ideal = saturation(m.quotient(), MonomialIdeal::minimalize(seq_gens, n));

  for (const auto& raw : window) {
    const IntVector g = m.ring().group().reduce(raw);
    if (!m.degree_allowed(g)) continue;
    std::vector<LaurentExponent> h0, torsion;
    if (const auto* pts = engine.points(g)) {
      for (const auto& lambda : *pts) {
        if (std::any_of(lambda.begin(), lambda.end(), [](long v) { return v < 0; })) continue;
        auto b = engine.block(lambda);
        if (b && !b->cells[0].empty() &&
            cohomology_from_blocks(g, {*b}, sequence.size(), box, Coefficients::rationals()).groups[0].rank > 0)
          h0.push_back(lambda);
        Exponent y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<Exponent::value_type>(lambda[i]);
        if (!contains_monomial(m.quotient(), y) && contains_monomial(torsion_ideal, y)) torsion.push_back(lambda);
      }
    }
    if (h0 == torsion) continue;
    std::vector<LaurentExponent> diff;
    std::set_symmetric_difference(h0.begin(), h0.end(), torsion.begin(), torsion.end(), std::back_inserter(diff));
    if (std::all_of(diff.begin(), diff.end(), [box](const LaurentExponent& l) { return touches_box(l, box); }))
      throw DomainError("H^0 and torsion differ only on the box boundary; enlarge --box");
    return false;
  }
  return true;
}

}  // namespace monotor
