#pragma once

namespace cachematch {

/// Broadcast rate in file units, split into the coded-delivery part and the
/// part sent uncoded (unicast to unmatched users or whole-file broadcasts).
struct RateBreakdown {
  double coded = 0.0;
  double unicast = 0.0;
  double total = 0.0;
};

}  // namespace cachematch
