#include "rctv/retrodesign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "rctv/normal.hpp"
#include "rctv/power.hpp"
#include "rctv/rng.hpp"

namespace rctv {

namespace {

constexpr std::uint64_t kChunk = 1u << 16;
constexpr std::uint64_t kMinSims = 10'000;

void check_sim_args(double effect, double se, double alpha, std::uint64_t n_sims) {
  if (effect == 0.0 || !std::isfinite(effect))
    throw ValidationError("simulation: true effect must be finite and nonzero");
  if (!(se > 0.0) || !std::isfinite(se))
    throw ValidationError("simulation: se must be positive and finite");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("simulation: alpha must be in (0,1)");
  if (n_sims < kMinSims)
    throw ValidationError("simulation: need at least 10000 simulations");
}

// Per-chunk partial sums. Chunks are merged in index order at the end, so the
// totals are independent of which thread handled which chunk.
struct Partial {
  std::uint64_t n_sig = 0;
  std::uint64_t n_wrong_sign = 0;
  double sum_abs = 0.0;
  double sum_abs2 = 0.0;
};

// z-scale simulation: estimates are lambda + N(0,1) with lambda = |effect|/se;
// everything of interest (significance, sign, |estimate|/|effect|) is
// invariant to working in these units.
std::vector<Partial> run_chunks(double lambda, double zc, std::uint64_t n_sims,
                                std::uint64_t seed, unsigned threads) {
  const std::uint64_t n_chunks = (n_sims + kChunk - 1) / kChunk;
  std::vector<Partial> parts(n_chunks);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
      Partial p;
      const std::uint64_t begin = c * kChunk;
      const std::uint64_t end = std::min(begin + kChunk, n_sims);
      for (std::uint64_t i = begin; i < end; ++i) {
        double x = lambda + counter_normal(seed, i);
        if (std::abs(x) <= zc) continue;
        ++p.n_sig;
        if (x < 0.0) ++p.n_wrong_sign;
        double a = std::abs(x);
        p.sum_abs += a;
        p.sum_abs2 += a * a;
      }
      parts[c] = p;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return parts;
}

}  // namespace

RetrodesignClosedForm retrodesign_closed_form(double effect, double se, double alpha) {
  if (effect == 0.0 || !std::isfinite(effect))
    throw ValidationError("retrodesign: true effect must be finite and nonzero");
  if (!(se > 0.0)) throw ValidationError("retrodesign: se must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("retrodesign: alpha must be in (0,1)");
  double lambda = std::abs(effect) / se;
  double zc = norm_quantile(1.0 - 0.5 * alpha);

  RetrodesignClosedForm r;
  double p_right = norm_cdf(lambda - zc);   // significant with the true sign
  double p_wrong = norm_cdf(-lambda - zc);  // significant with the wrong sign
  r.power = p_right + p_wrong;
  r.type_s = p_wrong / r.power;
  // E[|X|; X > zc] + E[|X|; X < -zc] for X ~ N(lambda, 1), via the truncated
  // normal mean: E[X; X > t] = lambda * Phi(lambda - t) + phi(t - lambda).
  double e_abs = lambda * p_right + norm_pdf(zc - lambda) +
                 norm_pdf(zc + lambda) - lambda * p_wrong;
  r.exaggeration = e_abs / (r.power * lambda);
  return r;
}

RetrodesignResult retrodesign(double effect, double se, double alpha,
                              std::uint64_t n_sims, std::uint64_t seed,
                              unsigned threads) {
  check_sim_args(effect, se, alpha, n_sims);
  double lambda = std::abs(effect) / se;
  double zc = norm_quantile(1.0 - 0.5 * alpha);

  auto parts = run_chunks(lambda, zc, n_sims, seed, threads);
  Partial total;
  for (const auto& p : parts) {  // deterministic merge order
    total.n_sig += p.n_sig;
    total.n_wrong_sign += p.n_wrong_sign;
    total.sum_abs += p.sum_abs;
    total.sum_abs2 += p.sum_abs2;
  }
  if (total.n_sig == 0)
    throw ValidationError("retrodesign: no simulated estimate reached significance; "
                          "increase n_sims or alpha");

  RetrodesignResult r;
  r.n_sims = n_sims;
  r.n_significant = total.n_sig;
  r.seed = seed;
  double n = static_cast<double>(n_sims);
  double ns = static_cast<double>(total.n_sig);
  r.power = ns / n;
  r.type_s = static_cast<double>(total.n_wrong_sign) / ns;
  double mean_abs = total.sum_abs / ns;
  r.exaggeration = mean_abs / lambda;

  r.power_se = std::sqrt(r.power * (1.0 - r.power) / n);
  r.type_s_se = std::sqrt(r.type_s * (1.0 - r.type_s) / ns);
  double var_abs =
      ns > 1.0 ? std::max(0.0, (total.sum_abs2 - ns * mean_abs * mean_abs) / (ns - 1.0))
               : 0.0;
  r.exaggeration_se = std::sqrt(var_abs / ns) / lambda;

  r.closed = retrodesign_closed_form(effect, se, alpha);
  return r;
}

CurseChainReport winners_curse_chain(double true_effect, double exploratory_se,
                                     double alpha, double target_power,
                                     std::uint64_t n_sims, std::uint64_t seed) {
  check_sim_args(true_effect, exploratory_se, alpha, n_sims);
  if (!(target_power > alpha && target_power < 1.0))
    throw ValidationError("winners_curse_chain: target power must be in (alpha, 1)");

  double lambda = std::abs(true_effect) / exploratory_se;
  double zc = norm_quantile(1.0 - 0.5 * alpha);
  double zb = norm_quantile(target_power);

  std::vector<double> inflations;
  std::vector<double> true_powers;
  for (std::uint64_t i = 0; i < n_sims; ++i) {
    double x = lambda + counter_normal(seed, i);
    if (std::abs(x) <= zc) continue;  // not significant: chain stops here
    // The confirmatory trial is sized for the *published* estimate: its se
    // must satisfy |est| / se = zc + zb. The power it actually has is then
    // driven by the true effect against that se.
    double inflation = std::abs(x) / lambda;
    inflations.push_back(inflation);
    double true_lambda = (zc + zb) / inflation;
    true_powers.push_back(norm_cdf(true_lambda - zc) + norm_cdf(-true_lambda - zc));
  }
  if (inflations.empty())
    throw ValidationError("winners_curse_chain: no exploratory run reached significance; "
                          "increase n_sims or alpha");

  auto quantile = [](std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    double pos = q * (static_cast<double>(v.size()) - 1.0);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    double frac = pos - static_cast<double>(i);
    return v[i] + frac * (v[i + 1] - v[i]);
  };
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };

  CurseChainReport rep;
  rep.true_effect = true_effect;
  rep.exploratory_se = exploratory_se;
  rep.alpha = alpha;
  rep.target_power = target_power;
  rep.n_sims = n_sims;
  rep.n_significant = inflations.size();
  rep.seed = seed;
  rep.exploratory_power =
      static_cast<double>(inflations.size()) / static_cast<double>(n_sims);
  rep.mean_inflation = mean(inflations);
  rep.median_inflation = quantile(inflations, 0.5);
  rep.mean_true_power = mean(true_powers);
  rep.median_true_power = quantile(true_powers, 0.5);
  rep.p10_true_power = quantile(true_powers, 0.10);
  rep.p90_true_power = quantile(true_powers, 0.90);
  rep.median_power_shortfall = target_power - rep.median_true_power;
  rep.median_n_underestimate = rep.median_inflation * rep.median_inflation;
  std::uint64_t reached = 0;
  for (double p : true_powers)
    if (p >= target_power) ++reached;
  rep.fraction_reaching_target =
      static_cast<double>(reached) / static_cast<double>(true_powers.size());
  return rep;
}

}  // namespace rctv
