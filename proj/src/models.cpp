#include "suppkit/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "suppkit/error.hpp"
#include "suppkit/parallel.hpp"
#include "suppkit/permanent.hpp"

namespace suppkit {

namespace {

double multinomial_coefficient(std::span<const int> mal) {
  // n! / prod_k s_k! for a sorted MAL
  double coeff = 1.0;
  int run = 0;
  for (std::size_t i = 0; i < mal.size(); ++i) {
    coeff *= static_cast<double>(i + 1);
    run = (i > 0 && mal[i] == mal[i - 1]) ? run + 1 : 1;
    coeff /= run;
  }
  return coeff;
}

double output_factorials(std::span<const int> mal) {
  double f = 1.0;
  int run = 0;
  for (std::size_t i = 0; i < mal.size(); ++i) {
    run = (i > 0 && mal[i] == mal[i - 1]) ? run + 1 : 1;
    f *= run;
  }
  return f;
}

void check_input(const InterferometerSpec& spec, const OccupationState& input) {
  if (input.modes() != spec.dim()) {
    throw Error(ErrorKind::InvalidState, "state mode count does not match the interferometer");
  }
}

Distribution finish(Distribution full, bool collision_free) {
  if (!collision_free) return full;
  return post_select_collision_free(full);
}

}  // namespace

Distribution distinguishable_distribution(const InterferometerSpec& spec,
                                          const OccupationState& input, bool collision_free) {
  check_input(spec, input);
  const int n = input.photons();
  const int m = input.modes();
  const auto in = occupation_to_mal(input);
  const Eigen::MatrixXd weights = spec.unitary().entries().cwiseAbs2();
  std::vector<DistributionEntry> entries;
  Eigen::MatrixXd sub(n, n);
  for_each_mal(n, m, false, [&](std::span<const int> out) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) sub(i, j) = weights(in[static_cast<std::size_t>(i)] - 1, out[j] - 1);
    }
    const double p = permanent_ryser(sub) / output_factorials(out);
    entries.push_back({ModeAssignmentList(std::vector<int>(out.begin(), out.end())), p});
  });
  return finish(Distribution(m, n, false, std::move(entries)), collision_free);
}

// ---------------------------------------------------------------------------
// Mean-field states

MeanFieldSpec MeanFieldSpec::for_input(const ModeAssignmentList& input, std::uint64_t samples,
                                       std::uint64_t seed) {
  MeanFieldSpec mf;
  mf.input_modes = input.modes();
  mf.photons = input.photons();
  mf.sampling = mf.photons == 2 ? PhaseSampling::ClosedForm : PhaseSampling::MonteCarlo;
  mf.samples = samples;
  mf.seed = seed;
  return mf;
}

namespace {

struct MeanFieldSetup {
  int n;
  int m;
  std::vector<ModeAssignmentList> outputs;  // G_{n,m}
  std::vector<double> coefficients;         // n! / prod s_k!
  std::vector<char> collision_free;
  ComplexMatrix rows;                       // rows j_r of U, one per spread mode
};

MeanFieldSetup setup_meanfield(const InterferometerSpec& spec, const MeanFieldSpec& mf) {
  const int m = spec.dim();
  auto modes = mf.input_modes;
  std::sort(modes.begin(), modes.end());
  if (static_cast<int>(modes.size()) != mf.photons) {
    throw Error(ErrorKind::InvalidArgument, "mean-field spread set must hold exactly n modes");
  }
  if (std::adjacent_find(modes.begin(), modes.end()) != modes.end()) {
    throw Error(ErrorKind::InvalidArgument, "mean-field spread modes must be distinct");
  }
  if (!modes.empty() && (modes.front() < 1 || modes.back() > m)) {
    throw Error(ErrorKind::InvalidMode, "mean-field mode outside the interferometer");
  }
  if (mf.samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one phase sample");
  MeanFieldSetup s{mf.photons, m, enumerate_mals(mf.photons, m, false), {}, {}, {}};
  for (const auto& out : s.outputs) {
    s.coefficients.push_back(multinomial_coefficient(out.modes()));
    s.collision_free.push_back(out.collision_free() ? 1 : 0);
  }
  s.rows.resize(static_cast<Eigen::Index>(modes.size()), m);
  for (std::size_t r = 0; r < modes.size(); ++r) {
    s.rows.row(static_cast<Eigen::Index>(r)) = spec.unitary().entries().row(modes[r] - 1);
  }
  return s;
}

// Closed form for two photons: with phase difference phi uniform,
// q_k = (A_k + 2 Re(x_k e^{i phi})) / 2, A_k = |a_k|^2 + |b_k|^2,
// x_k = conj(a_k) b_k, so E[q_k q_l] = (A_k A_l + 2 Re(x_k conj(x_l))) / 4.
std::vector<double> meanfield_two_photon(const MeanFieldSetup& s) {
  if (s.n != 2) {
    throw Error(ErrorKind::InvalidArgument, "closed-form mean-field averaging needs n = 2");
  }
  std::vector<double> a_sq(static_cast<std::size_t>(s.m));
  std::vector<Complex> x(static_cast<std::size_t>(s.m));
  for (int k = 0; k < s.m; ++k) {
    const Complex a = s.rows(0, k);
    const Complex b = s.rows(1, k);
    a_sq[static_cast<std::size_t>(k)] = std::norm(a) + std::norm(b);
    x[static_cast<std::size_t>(k)] = std::conj(a) * b;
  }
  std::vector<double> probs;
  probs.reserve(s.outputs.size());
  for (std::size_t o = 0; o < s.outputs.size(); ++o) {
    const auto k = static_cast<std::size_t>(s.outputs[o][0] - 1);
    const auto l = static_cast<std::size_t>(s.outputs[o][1] - 1);
    const double moment = (a_sq[k] * a_sq[l] + 2.0 * std::real(x[k] * std::conj(x[l]))) / 4.0;
    probs.push_back(s.coefficients[o] * moment);
  }
  return probs;
}

struct MonteCarloSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  // Collision-free mass C and flagged mass F per sample, for ratio errors.
  double f = 0, c = 0, ff = 0, cc = 0, fc = 0;
  std::uint64_t samples = 0;
};

constexpr std::uint64_t kMonteCarloChunk = 4096;

MonteCarloSums meanfield_monte_carlo(const MeanFieldSetup& s, const MeanFieldSpec& mf,
                                     const std::vector<char>& flagged) {
  const std::uint64_t chunks = (mf.samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<MonteCarloSums> partial(chunks);
  const std::size_t outputs = s.outputs.size();
  const auto n_modes = static_cast<std::size_t>(s.rows.rows());
  parallel_for(chunks, [&](std::size_t chunk) {
    auto rng = substream(mf.seed, chunk);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    auto& acc = partial[chunk];
    acc.sum.assign(outputs, 0.0);
    acc.sum_sq.assign(outputs, 0.0);
    const std::uint64_t begin = chunk * kMonteCarloChunk;
    const std::uint64_t end = std::min(mf.samples, begin + kMonteCarloChunk);
    std::vector<Complex> phases(n_modes);
    std::vector<double> q(static_cast<std::size_t>(s.m));
    for (std::uint64_t t = begin; t < end; ++t) {
      for (auto& ph : phases) ph = std::polar(1.0, angle(rng));
      for (int k = 0; k < s.m; ++k) {
        Complex amp{0.0, 0.0};
        for (std::size_t r = 0; r < n_modes; ++r) amp += phases[r] * s.rows(static_cast<Eigen::Index>(r), k);
        q[static_cast<std::size_t>(k)] = std::norm(amp) / s.n;
      }
      double f = 0.0, c = 0.0;
      for (std::size_t o = 0; o < outputs; ++o) {
        double p = s.coefficients[o];
        for (int mode : s.outputs[o].modes()) p *= q[static_cast<std::size_t>(mode - 1)];
        acc.sum[o] += p;
        acc.sum_sq[o] += p * p;
        if (s.collision_free[o]) {
          c += p;
          if (flagged[o]) f += p;
        }
      }
      acc.f += f;
      acc.c += c;
      acc.ff += f * f;
      acc.cc += c * c;
      acc.fc += f * c;
      ++acc.samples;
    }
  });
  MonteCarloSums total;
  total.sum.assign(outputs, 0.0);
  total.sum_sq.assign(outputs, 0.0);
  for (const auto& p : partial) {
    for (std::size_t o = 0; o < outputs; ++o) {
      total.sum[o] += p.sum[o];
      total.sum_sq[o] += p.sum_sq[o];
    }
    total.f += p.f;
    total.c += p.c;
    total.ff += p.ff;
    total.cc += p.cc;
    total.fc += p.fc;
    total.samples += p.samples;
  }
  return total;
}

}  // namespace

MeanFieldEstimate meanfield_distribution(const InterferometerSpec& spec, const MeanFieldSpec& mf,
                                         bool collision_free) {
  const auto s = setup_meanfield(spec, mf);
  std::vector<double> mean;
  std::vector<double> err(s.outputs.size(), 0.0);
  if (mf.sampling == PhaseSampling::ClosedForm) {
    mean = meanfield_two_photon(s);
  } else {
    const auto sums = meanfield_monte_carlo(s, mf, std::vector<char>(s.outputs.size(), 0));
    const double count = static_cast<double>(sums.samples);
    mean.resize(s.outputs.size());
    for (std::size_t o = 0; o < s.outputs.size(); ++o) {
      mean[o] = sums.sum[o] / count;
      const double var = std::max(0.0, sums.sum_sq[o] / count - mean[o] * mean[o]);
      err[o] = std::sqrt(var / count);
    }
  }
  std::vector<DistributionEntry> entries;
  std::vector<double> kept_err;
  double kept_mass = 0.0;
  for (std::size_t o = 0; o < s.outputs.size(); ++o) {
    if (collision_free && !s.collision_free[o]) continue;
    entries.push_back({s.outputs[o], mean[o]});
    kept_err.push_back(err[o]);
    kept_mass += mean[o];
  }
  Distribution dist(s.m, s.n, collision_free, std::move(entries));
  if (collision_free) {
    dist.normalize();
    for (auto& e : kept_err) e /= kept_mass;
  }
  return {std::move(dist), std::move(kept_err)};
}

RatioEstimate meanfield_violation(const InterferometerSpec& spec, const MeanFieldSpec& mf,
                                  const std::function<bool(const ModeAssignmentList&)>& suppressed) {
  const auto s = setup_meanfield(spec, mf);
  std::vector<char> flagged(s.outputs.size(), 0);
  for (std::size_t o = 0; o < s.outputs.size(); ++o) {
    flagged[o] = s.collision_free[o] && suppressed(s.outputs[o]) ? 1 : 0;
  }
  if (mf.sampling == PhaseSampling::ClosedForm) {
    const auto probs = meanfield_two_photon(s);
    double f = 0.0, c = 0.0;
    for (std::size_t o = 0; o < probs.size(); ++o) {
      if (!s.collision_free[o]) continue;
      c += probs[o];
      if (flagged[o]) f += probs[o];
    }
    if (c <= 0.0) throw Error(ErrorKind::InvalidArgument, "no collision-free mass");
    return {f / c, 0.0};
  }
  const auto sums = meanfield_monte_carlo(s, mf, flagged);
  const double count = static_cast<double>(sums.samples);
  const double f = sums.f / count;
  const double c = sums.c / count;
  if (c <= 0.0) throw Error(ErrorKind::InvalidArgument, "no collision-free mass");
  const double ratio = f / c;
  const double var_f = sums.ff / count - f * f;
  const double var_c = sums.cc / count - c * c;
  const double cov = sums.fc / count - f * c;
  const double var_ratio = (var_f - 2.0 * ratio * cov + ratio * ratio * var_c) / (c * c * count);
  return {ratio, std::sqrt(std::max(0.0, var_ratio))};
}

// ---------------------------------------------------------------------------
// Partial distinguishability

namespace {

// p * quantum + (1 - p) * distinguishable over G_{n,m}, any n.
Distribution mixture_any_n(const InterferometerSpec& spec, const OccupationState& input, double p) {
  auto quantum = output_distribution(spec, input, false);
  const auto classical = distinguishable_distribution(spec, input, false);
  for (std::size_t i = 0; i < quantum.entries().size(); ++i) {
    auto& e = quantum.entries()[i];
    e.p = p * e.p + (1.0 - p) * classical.entries()[i].p;
  }
  return quantum;
}

}  // namespace

Distribution mixed_distribution(const InterferometerSpec& spec, const OccupationState& input,
                                double p_indist) {
  check_input(spec, input);
  if (input.photons() != 2) {
    throw Error(ErrorKind::InvalidArgument, "the indistinguishability mixture is a two-photon model");
  }
  if (!(p_indist >= 0.0 && p_indist <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "p_indist must lie in [0, 1]");
  }
  return mixture_any_n(spec, input, p_indist);
}

double hom_visibility(const Distribution& quantum, const Distribution& distinguishable,
                      const ModeAssignmentList& output) {
  const double pd = distinguishable.probability(output);
  const double pq = quantum.probability(output);
  if (pd <= 0.0) throw Error(ErrorKind::UndefinedVisibility, "distinguishable probability is zero");
  return (pd - pq) / pd;
}

// ---------------------------------------------------------------------------
// Multi-pair emission

NoiseParams NoiseParams::uniform(int m, double gain, double p_indist, double heralding,
                                 double transmission) {
  NoiseParams params;
  params.gain.assign(static_cast<std::size_t>(m), gain);
  params.heralding.assign(static_cast<std::size_t>(m), heralding);
  params.p_indist = p_indist;
  params.transmission = transmission;
  return params;
}

void NoiseParams::validate(int m) const {
  if (static_cast<int>(gain.size()) != m || static_cast<int>(heralding.size()) != m) {
    throw Error(ErrorKind::InvalidArgument, "need one gain and heralding value per input mode");
  }
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  for (double g : gain) {
    if (!(g >= 0.0)) throw Error(ErrorKind::InvalidArgument, "gain must be non-negative");
  }
  for (double eta : heralding) {
    if (!unit(eta)) throw Error(ErrorKind::InvalidArgument, "heralding must lie in [0, 1]");
  }
  if (!unit(p_indist)) throw Error(ErrorKind::InvalidArgument, "p_indist must lie in [0, 1]");
  if (!unit(transmission)) throw Error(ErrorKind::InvalidArgument, "transmission must lie in [0, 1]");
}

namespace {

// Rate of each two-click pattern (indexed like enumerate_mals(2, m, true))
// for a given injected state, including loss and bucket detection.
std::vector<double> two_click_rates(const InterferometerSpec& spec, const ModeAssignmentList& input,
                                    double p_indist, double transmission) {
  const int m = spec.dim();
  const auto patterns = enumerate_mals(2, m, true);
  std::vector<double> rates(patterns.size(), 0.0);
  const auto dist = mixture_any_n(spec, mal_to_occupation(input, m), p_indist);
  const double lost = 1.0 - transmission;
  for (const auto& e : dist.entries()) {
    if (e.p == 0.0) continue;
    const auto occ = mal_to_occupation(e.output, m);
    for (std::size_t t = 0; t < patterns.size(); ++t) {
      const int a = patterns[t][0];
      const int b = patterns[t][1];
      double prob = 1.0;
      for (int k = 1; k <= m && prob > 0.0; ++k) {
        const double dark = std::pow(lost, occ[k]);
        prob *= (k == a || k == b) ? 1.0 - dark : dark;
      }
      rates[t] += e.p * prob;
    }
  }
  return rates;
}

}  // namespace

NoisyEventResult noisy_event_model(const InterferometerSpec& spec, const NoiseParams& params,
                                   int herald_i, int herald_j) {
  const int m = spec.dim();
  params.validate(m);
  if (herald_i > herald_j) std::swap(herald_i, herald_j);
  if (herald_i < 1 || herald_j > m || herald_i == herald_j) {
    throw Error(ErrorKind::InvalidMode, "heralded inputs must be two distinct modes in 1..m");
  }
  const auto i = static_cast<std::size_t>(herald_i - 1);
  const auto j = static_cast<std::size_t>(herald_j - 1);
  const auto& g = params.gain;
  const auto& eta = params.heralding;
  const double p = params.p_indist;
  const double tau = params.transmission;

  const auto patterns = enumerate_mals(2, m, true);
  std::vector<double> rates(patterns.size(), 0.0);
  auto add = [&](double weight, const ModeAssignmentList& injected) -> double {
    if (weight == 0.0) return 0.0;
    const auto r = two_click_rates(spec, injected, p, tau);
    double sum = 0.0;
    for (std::size_t t = 0; t < r.size(); ++t) {
      rates[t] += weight * r[t];
      sum += weight * r[t];
    }
    return sum;
  };

  NoisyEventResult result{Distribution(m, 2, true, {}), {}, 0.0, 0.0, 0.0};
  // Weights relative to g_i^2 g_j^2, which every term shares.
  result.correct_rate = add(eta[i] * eta[j], ModeAssignmentList{herald_i, herald_j});
  for (int k = 1; k <= m; ++k) {
    if (k == herald_i || k == herald_j) continue;
    const auto ks = static_cast<std::size_t>(k - 1);
    const double w = g[ks] * g[ks] * eta[i] * eta[j] * (1.0 - eta[ks]);
    result.three_source_rate += add(w, ModeAssignmentList{herald_i, herald_j, k});
  }
  auto double_herald = [](double e) { return 1.0 - (1.0 - e) * (1.0 - e); };
  result.double_pair_rate +=
      add(g[i] * g[i] * double_herald(eta[i]) * eta[j], ModeAssignmentList{herald_i, herald_i, herald_j});
  result.double_pair_rate +=
      add(g[j] * g[j] * eta[i] * double_herald(eta[j]), ModeAssignmentList{herald_i, herald_j, herald_j});

  std::vector<DistributionEntry> entries;
  for (std::size_t t = 0; t < patterns.size(); ++t) entries.push_back({patterns[t], rates[t]});
  result.patterns = Distribution(m, 2, true, std::move(entries));
  result.rates = rates;
  if (result.event_rate() > 0.0) result.patterns.normalize();
  return result;
}

double noisy_hom_visibility(double p_indist, double gain, double heralding, double transmission) {
  const auto spec = InterferometerSpec::sylvester(2);
  auto coincidences = [&](double p) {
    const auto params = NoiseParams::uniform(2, gain, p, heralding, transmission);
    return noisy_event_model(spec, params, 1, 2).event_rate();
  };
  const double distinguishable = coincidences(0.0);
  if (distinguishable <= 0.0) {
    throw Error(ErrorKind::UndefinedVisibility, "no coincidences for distinguishable photons");
  }
  return (distinguishable - coincidences(p_indist)) / distinguishable;
}

double p_from_visibility(double visibility, double gain, double heralding, double transmission) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "visibility must lie in [0, 1]");
  }
  if (gain == 0.0) return visibility;
  auto excess = [&](double p) {
    return noisy_hom_visibility(p, gain, heralding, transmission) - visibility;
  };
  double lo = 0.0, hi = 1.0;
  if (excess(hi) < 0.0) {
    throw Error(ErrorKind::NoRoot, "visibility exceeds what the noise model allows at p = 1");
  }
  for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace suppkit
