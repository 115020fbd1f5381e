#pragma once

#include <cstdint>

namespace cachematch {

/// Broadcast rate of a coded-caching delivery for one demand realization.
///
/// `caches` caches share a library of `files` files with `memory` files of
/// storage each, under uncoded symmetric placement with tau = caches *
/// memory / files. When `distinct_demands` distinct files are requested by the
/// users attached to those caches, the delivery needs
///
///   [C(K, tau+1) - C(K - N_e, tau+1)] / C(K, tau)
///
/// file units for integer tau; non-integer tau is handled by memory sharing
/// between floor(tau) and floor(tau) + 1. Caches without an attached user are
/// treated as requesting an already-demanded file, which leaves the count of
/// distinct demands unchanged.
double coded_delivery_rate(std::int64_t caches, double memory, std::int64_t files,
                           std::int64_t distinct_demands);

/// Same formula at an integer tau.
double coded_delivery_rate_at(std::int64_t caches, std::int64_t tau, std::int64_t distinct_demands);

}  // namespace cachematch
