#include "suppkit/distribution.hpp"

#include <algorithm>
#include <numeric>

#include "suppkit/error.hpp"

namespace suppkit {

Distribution::Distribution(int modes, int photons, bool collision_free,
                           std::vector<DistributionEntry> entries)
    : modes_(modes), photons_(photons), collision_free_(collision_free), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.output < b.output; });
}

Distribution Distribution::zeros(int modes, int photons, bool collision_free) {
  std::vector<DistributionEntry> entries;
  for (auto& mal : enumerate_mals(photons, modes, collision_free)) {
    entries.push_back({std::move(mal), 0.0});
  }
  return Distribution(modes, photons, collision_free, std::move(entries));
}

double Distribution::probability(const ModeAssignmentList& output) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), output,
                             [](const auto& e, const auto& key) { return e.output < key; });
  if (it == entries_.end() || it->output != output) {
    throw Error(ErrorKind::MismatchedSpaces, "output " + output.to_string() + " not in outcome space");
  }
  return it->p;
}

double& Distribution::at(const ModeAssignmentList& output) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), output,
                             [](const auto& e, const auto& key) { return e.output < key; });
  if (it == entries_.end() || it->output != output) {
    throw Error(ErrorKind::MismatchedSpaces, "output " + output.to_string() + " not in outcome space");
  }
  return it->p;
}

double Distribution::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0.0,
                         [](double acc, const auto& e) { return acc + e.p; });
}

void Distribution::normalize() {
  const double mass = total();
  if (mass <= 0.0) throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero distribution");
  for (auto& e : entries_) e.p /= mass;
  raw_mass_ = mass;
}

bool Distribution::same_space(const Distribution& other) const {
  if (modes_ != other.modes_ || photons_ != other.photons_ ||
      collision_free_ != other.collision_free_ || entries_.size() != other.entries_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].output != other.entries_[i].output) return false;
  }
  return true;
}

Distribution post_select_collision_free(const Distribution& dist) {
  std::vector<DistributionEntry> kept;
  for (const auto& e : dist.entries()) {
    if (e.output.collision_free()) kept.push_back(e);
  }
  Distribution out(dist.modes(), dist.photons(), true, std::move(kept));
  out.normalize();
  return out;
}

}  // namespace suppkit
