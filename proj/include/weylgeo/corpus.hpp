#pragma once

// Seeded generators for the random test corpora: smooth chart fields (sums of
// a few low-frequency cosines), SPD metric perturbations, global 1-forms on
// the sphere pulled back from ambient R^3 data, SL(3) draws with a condition
// number cap and generic group elements.

#include "weylgeo/cartan.hpp"
#include "weylgeo/fields.hpp"
#include "weylgeo/models.hpp"
#include "weylgeo/rng.hpp"

namespace weylgeo {

// sup|f| <= amplitude, wavenumbers bounded by max_freq
ScalarField random_smooth_scalar(SplitMix64& rng, double amplitude, double max_freq,
                                 const Domain& domain = Domain::unbounded());

OneFormField random_smooth_oneform(SplitMix64& rng, double amplitude, double max_freq,
                                   const Domain& domain = Domain::unbounded());

// identity plus independent smooth perturbations of each component;
// amplitude <= 0.3 keeps it uniformly positive definite
MetricField random_spd_metric(SplitMix64& rng, double amplitude, double max_freq,
                              const Domain& domain = Domain::unbounded());

// integer-mode trigonometric fields, periodic on the unit torus chart
ScalarField random_periodic_scalar(SplitMix64& rng, double amplitude);
OneFormField random_periodic_oneform(SplitMix64& rng, double amplitude);
MetricField random_periodic_metric(SplitMix64& rng, double amplitude);

// restriction of a random affine-coefficient ambient 1-form; smooth on the
// whole sphere, hence usable across both charts
OneFormField random_sphere_oneform(const SurfaceModel& sphere, SplitMix64& rng,
                                   double amplitude);

SL3Matrix random_sl3(SplitMix64& rng, double cond_max);

GroupElement random_group_element(SplitMix64& rng, double b_max);

} // namespace weylgeo
