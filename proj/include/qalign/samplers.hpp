#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "qalign/qubo.hpp"
#include "qalign/rng.hpp"

namespace qalign {

// A measured bitstring with the clamped bit restored in front.
template <typename Scalar>
struct Solution {
  BitString bits;  // length B+1, bits[0] == 1
  Scalar energy;   // q' P q
};

using Solutiond = Solution<double>;

template <typename Scalar>
struct EnergySpectrum {
  struct Level {
    Scalar energy;
    std::uint64_t multiplicity;
  };
  std::vector<Level> levels;  // strictly ascending
  Scalar gap = 0;             // levels[1].energy - levels[0].energy
};

using EnergySpectrumd = EnergySpectrum<double>;

// Best-so-far improvements of one annealing chain, strictly decreasing.
template <typename Scalar>
struct Trace {
  struct Event {
    std::uint64_t step;
    Scalar energy;
    BitString bits;  // full bitstring, clamped bit included
  };
  std::vector<Event> events;
};

using Traced = Trace<double>;

struct SaSchedule {
  double t_start = 1.0;
  double t_end = 1e-3;
  int sweeps = 5000;
  int restarts = 64;
};

namespace detail {

constexpr int kMaxExhaustiveBits = 24;

// Mutable assignment with the per-variable field f_i = sum_j Q_ij b_j kept
// up to date, giving O(B) single-flip energy deltas.
template <typename Scalar>
class FlipState {
 public:
  explicit FlipState(const ReducedQubo<Scalar>& reduced)
      : reduced_(reduced),
        bits_(static_cast<std::size_t>(reduced.size()), 0),
        field_(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(reduced.size())),
        energy_(reduced.constant) {}

  void reset(const BitString& bits) {
    bits_ = bits;
    field_.setZero();
    for (int j = 0; j < reduced_.size(); ++j)
      if (bits_[static_cast<std::size_t>(j)]) field_ += reduced_.Q.col(j);
    energy_ = reduced_.energy(bits_);
  }

  Scalar flip_delta(int i) const {
    const Scalar sign = bits_[static_cast<std::size_t>(i)] ? Scalar(-1) : Scalar(1);
    const Scalar off_diag = field_(i) - reduced_.Q(i, i) * Scalar(bits_[static_cast<std::size_t>(i)]);
    return sign * (reduced_.linear(i) + reduced_.Q(i, i) + Scalar(2) * off_diag);
  }

  void apply_flip(int i, Scalar delta) {
    bits_[static_cast<std::size_t>(i)] ^= 1;
    if (bits_[static_cast<std::size_t>(i)])
      field_ += reduced_.Q.col(i);
    else
      field_ -= reduced_.Q.col(i);
    energy_ += delta;
  }

  const BitString& bits() const { return bits_; }
  Scalar energy() const { return energy_; }

 private:
  const ReducedQubo<Scalar>& reduced_;
  BitString bits_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> field_;
  Scalar energy_;
};

// Lexicographic key: free bit 0 is the most significant, so the numeric
// order of keys is the string order of bitstrings.
inline std::uint64_t lex_key(const BitString& bits) {
  std::uint64_t key = 0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) key |= 1ull << (bits.size() - 1 - j);
  return key;
}

inline BitString bits_from_key(std::uint64_t key, int b) {
  BitString bits(static_cast<std::size_t>(b), 0);
  for (int j = 0; j < b; ++j)
    if (key & (1ull << (b - 1 - j))) bits[static_cast<std::size_t>(j)] = 1;
  return bits;
}

template <typename Scalar>
Solution<Scalar> make_solution(const ReducedQubo<Scalar>& reduced, const BitString& free_bits) {
  Solution<Scalar> s;
  s.bits.reserve(free_bits.size() + 1);
  s.bits.push_back(1);
  s.bits.insert(s.bits.end(), free_bits.begin(), free_bits.end());
  s.energy = reduced.energy(free_bits);
  return s;
}

// Gray-code sweep over all 2^B assignments. `visit(energy, key)` sees the
// running (incrementally accumulated) energy of every state.
template <typename Scalar, typename Visitor>
void gray_scan(const ReducedQubo<Scalar>& reduced, Visitor&& visit) {
  const int b = reduced.size();
  if (b < 1) throw TooManyBits("reduced QUBO has no free bits");
  if (b > kMaxExhaustiveBits) throw TooManyBits("exhaustive enumeration capped at 24 bits");
  FlipState<Scalar> state(reduced);
  std::uint64_t key = 0;
  visit(state.energy(), key);
  const std::uint64_t count = 1ull << b;
  for (std::uint64_t i = 1; i < count; ++i) {
    const int j = std::countr_zero(i);
    const Scalar delta = state.flip_delta(j);
    state.apply_flip(j, delta);
    key ^= 1ull << (b - 1 - j);
    visit(state.energy(), key);
  }
}

}  // namespace detail

// Global minimum by exhaustive scan; energy ties (within 1e-12 relative)
// resolve to the lexicographically smallest bitstring.
template <typename Scalar>
Solution<Scalar> exhaustive_min(const ReducedQubo<Scalar>& reduced) {
  Scalar best = 0;
  std::uint64_t best_key = 0;
  bool first = true;
  detail::gray_scan(reduced, [&](Scalar e, std::uint64_t key) {
    if (first) {
      best = e;
      best_key = key;
      first = false;
      return;
    }
    const Scalar tol = Scalar(1e-12) * std::max({Scalar(1), std::abs(e), std::abs(best)});
    if (e < best - tol) {
      best = e;
      best_key = key;
    } else if (std::abs(e - best) <= tol && key < best_key) {
      best_key = key;
      if (e < best) best = e;
    }
  });
  return detail::make_solution(reduced, detail::bits_from_key(best_key, reduced.size()));
}

template <typename Scalar>
struct ExhaustiveResult {
  Solution<Scalar> solution;
  EnergySpectrum<Scalar> spectrum;
};

// Exhaustive ground state plus the full energy spectrum. Levels closer than
// 1e-9 (relative) collapse into one level with summed multiplicity.
template <typename Scalar>
ExhaustiveResult<Scalar> solve_exhaustive(const ReducedQubo<Scalar>& reduced) {
  ExhaustiveResult<Scalar> out;
  out.solution = exhaustive_min(reduced);

  std::vector<Scalar> energies;
  energies.reserve(1ull << reduced.size());
  detail::gray_scan(reduced, [&](Scalar e, std::uint64_t) { energies.push_back(e); });
  std::sort(energies.begin(), energies.end());

  auto& levels = out.spectrum.levels;
  for (const Scalar e : energies) {
    if (!levels.empty() &&
        e - levels.back().energy <= Scalar(1e-9) * std::max(Scalar(1), std::abs(e))) {
      ++levels.back().multiplicity;
    } else {
      levels.push_back({e, 1});
    }
  }
  out.spectrum.gap = levels.size() > 1 ? levels[1].energy - levels[0].energy : Scalar(0);
  return out;
}

// Lowest m states in ascending (energy, bitstring) order.
template <typename Scalar>
std::vector<std::pair<Scalar, BitString>> spectrum_slice(const ReducedQubo<Scalar>& reduced,
                                                         std::uint64_t m) {
  if (m < 1) throw Error("spectrum slice needs m >= 1");
  std::vector<std::pair<Scalar, std::uint64_t>> all;
  all.reserve(1ull << reduced.size());
  detail::gray_scan(reduced, [&](Scalar e, std::uint64_t key) { all.emplace_back(e, key); });
  std::sort(all.begin(), all.end());
  if (m < all.size()) all.resize(m);

  std::vector<std::pair<Scalar, BitString>> out;
  out.reserve(all.size());
  for (const auto& [e, key] : all) {
    Solution<Scalar> s = detail::make_solution(reduced, detail::bits_from_key(key, reduced.size()));
    out.emplace_back(s.energy, std::move(s.bits));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Start temperature spanning the largest possible single-flip delta.
template <typename Scalar>
SaSchedule default_schedule(const ReducedQubo<Scalar>& reduced) {
  SaSchedule s;
  Scalar t = 0;
  for (int i = 0; i < reduced.size(); ++i) {
    Scalar row = std::abs(reduced.linear(i)) + std::abs(reduced.Q(i, i));
    for (int j = 0; j < reduced.size(); ++j)
      if (j != i) row += Scalar(2) * std::abs(reduced.Q(i, j));
    t = std::max(t, row);
  }
  s.t_start = t > 0 ? static_cast<double>(t) : 1.0;
  s.t_end = 1e-3 * s.t_start;
  return s;
}

template <typename Scalar>
struct SaResult {
  Solution<Scalar> solution;
  Trace<Scalar> trace;  // trace of the restart chain that produced the winner
};

// Single-bit-flip Metropolis annealing with geometric cooling and independent
// restarts. Restart chains use counter-split seeds and merge by (energy,
// lexicographic bitstring), so the result is deterministic however the
// chains are scheduled.
template <typename Scalar>
SaResult<Scalar> solve_sa(const ReducedQubo<Scalar>& reduced, const SaSchedule& schedule,
                          std::uint64_t seed) {
  if (!(schedule.t_start > schedule.t_end && schedule.t_end > 0))
    throw InvalidSchedule("need t_start > t_end > 0");
  if (schedule.sweeps < 1 || schedule.restarts < 1)
    throw InvalidSchedule("need sweeps >= 1 and restarts >= 1");

  const int b = reduced.size();
  const double cool = schedule.t_end / schedule.t_start;

  SaResult<Scalar> out;
  Scalar win_energy = std::numeric_limits<Scalar>::infinity();
  std::uint64_t win_key = 0;
  BitString win_bits;

  for (int r = 0; r < schedule.restarts; ++r) {
    SplitMix64 rng(split_seed(seed, static_cast<std::uint64_t>(r)));
    BitString init(static_cast<std::size_t>(b));
    for (auto& bit : init) bit = rng.coin() ? 1 : 0;

    detail::FlipState<Scalar> state(reduced);
    state.reset(init);

    Trace<Scalar> trace;
    Scalar best_exact = state.energy();
    Scalar best_running = state.energy();
    BitString best_bits = state.bits();
    trace.events.push_back({0, best_exact, detail::make_solution(reduced, best_bits).bits});

    std::uint64_t step = 0;
    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
      const double frac = schedule.sweeps > 1
                              ? static_cast<double>(sweep) / static_cast<double>(schedule.sweeps - 1)
                              : 1.0;
      const double temp = schedule.t_start * std::pow(cool, frac);
      for (int i = 0; i < b; ++i) {
        ++step;
        const Scalar delta = state.flip_delta(i);
        if (delta <= 0 || rng.uniform01() < std::exp(-static_cast<double>(delta) / temp)) {
          state.apply_flip(i, delta);
          if (state.energy() < best_running) {
            best_running = state.energy();
            const Scalar exact = reduced.energy(state.bits());
            if (exact < best_exact) {
              best_exact = exact;
              best_bits = state.bits();
              trace.events.push_back({step, exact, detail::make_solution(reduced, best_bits).bits});
            }
          }
        }
      }
    }

    const std::uint64_t key = detail::lex_key(best_bits);
    if (best_exact < win_energy || (best_exact == win_energy && key < win_key)) {
      win_energy = best_exact;
      win_key = key;
      win_bits = best_bits;
      out.trace = std::move(trace);
    }
  }

  out.solution = detail::make_solution(reduced, win_bits);
  return out;
}

}  // namespace qalign
