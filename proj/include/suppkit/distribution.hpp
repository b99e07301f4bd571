#pragma once

#include <string>
#include <vector>

#include "suppkit/fock.hpp"

namespace suppkit {

struct DistributionEntry {
  ModeAssignmentList output;
  double p = 0.0;
};

/// Probability distribution over the output states G_{n,m} (or Q_{n,m} when
/// collision_free). Entries are kept sorted by MAL.
class Distribution {
 public:
  Distribution(int modes, int photons, bool collision_free, std::vector<DistributionEntry> entries);

  /// Zero-probability distribution over every state of the space.
  static Distribution zeros(int modes, int photons, bool collision_free);

  int modes() const noexcept { return modes_; }
  int photons() const noexcept { return photons_; }
  bool collision_free() const noexcept { return collision_free_; }
  const std::vector<DistributionEntry>& entries() const noexcept { return entries_; }
  std::vector<DistributionEntry>& entries() noexcept { return entries_; }

  /// Throws MismatchedSpaces if `output` is outside the outcome space.
  double probability(const ModeAssignmentList& output) const;
  double& at(const ModeAssignmentList& output);
  double total() const;

  /// Mass before post-selection renormalization (1 when none happened).
  double raw_mass() const noexcept { return raw_mass_; }
  void set_raw_mass(double mass) noexcept { raw_mass_ = mass; }

  /// Divides by the current total and records it as raw mass.
  void normalize();

  bool same_space(const Distribution& other) const;

 private:
  int modes_;
  int photons_;
  bool collision_free_;
  std::vector<DistributionEntry> entries_;
  double raw_mass_ = 1.0;
};

/// Restricts a distribution over G to the collision-free outputs and
/// renormalizes; raw_mass keeps the retained mass.
Distribution post_select_collision_free(const Distribution& dist);

}  // namespace suppkit
