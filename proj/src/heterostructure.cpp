#include "qnd/heterostructure.hpp"

#include <algorithm>
#include <cmath>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

// GaAs barrier masses; the alloy masses are set in from_alloys.
constexpr double gaas_electron_mass = 0.067;
constexpr double gaas_heavy_hole_mass = 0.51;

// Fraction of the cell [c - h/2, c + h/2] inside [lo, hi].
double overlap_1d(double c, double h, double lo, double hi) {
  const double a = std::max(c - 0.5 * h, lo);
  const double b = std::min(c + 0.5 * h, hi);
  return b > a ? (b - a) / h : 0.0;
}

void check_fits(const GridSpec& grid, const HeteroGeometry& g, double margin) {
  grid.validate();
  g.validate();
  const double half = grid.half_extent();
  const double lateral = 0.5 * g.qd_base_nm + margin;
  const double top = g.qd_top() + margin;
  const double bottom = g.qw_top() + margin;
  if (lateral > half || top > half || bottom > half)
    throw ValidationError("heterostructure does not fit in the grid with the required margin");
}

struct Fractions {
  double dot, well, barrier;
};

template <class F>
ScalarField3D fill(const GridSpec& grid, const HeteroGeometry& g, F&& mix) {
  ScalarField3D field(grid);
  const double h = grid.spacing_nm;
  const double qd_half = 0.5 * g.qd_base_nm;
  for (int i = 0; i < grid.n; ++i) {
    const double fx = overlap_1d(grid.coord(i), h, -qd_half, qd_half);
    for (int j = 0; j < grid.n; ++j) {
      const double fy = overlap_1d(grid.coord(j), h, -qd_half, qd_half);
      for (int k = 0; k < grid.n; ++k) {
        const double z = grid.coord(k);
        const double fw = overlap_1d(z, h, -g.qw_top(), g.qw_top());
        const double fd = fx * fy * overlap_1d(z, h, g.qd_bottom(), g.qd_top());
        field.at(i, j, k) = mix(Fractions{fd, fw, 1.0 - fd - fw});
      }
    }
  }
  return field;
}

}  // namespace

void HeteroGeometry::validate() const {
  if (!(qd_base_nm > 0 && qd_height_nm > 0 && qw_thickness_nm > 0 && barrier_thickness_nm > 0))
    throw ValidationError("geometry: all lengths must be positive");
  if (!(indium_qd > 0 && indium_qd < 1 && indium_qw > 0 && indium_qw < 1))
    throw ValidationError("geometry: indium fractions must lie in (0, 1)");
}

double ingaas_gap_meV(double x) { return 1519.0 - 1584.0 * x + 475.0 * x * x; }

BandProfile BandProfile::from_alloys(double indium_qd, double indium_qw, double conduction_share) {
  const double gap_b = ingaas_gap_meV(0.0);
  const double gap_d = ingaas_gap_meV(indium_qd);
  const double gap_w = ingaas_gap_meV(indium_qw);
  const double qc = conduction_share;
  const double qv = 1.0 - conduction_share;

  BandProfile p;
  p.electron.dot = {0.0, 0.0504};
  p.electron.well = {qc * (gap_w - gap_d), 0.0566};
  p.electron.barrier = {qc * (gap_b - gap_d), gaas_electron_mass};

  p.heavy_hole.dot = {0.0, 0.48};
  p.heavy_hole.well = {qv * (gap_w - gap_d), 0.495};
  p.heavy_hole.barrier = {qv * (gap_b - gap_d), gaas_heavy_hole_mass};
  return p;
}

BandProfile BandProfile::with_electron_offsets(double indium_qd, double indium_qw, double well_meV,
                                               double barrier_meV) {
  BandProfile p = from_alloys(indium_qd, indium_qw, default_conduction_share);
  const double gap_d = ingaas_gap_meV(indium_qd);
  p.electron.well.potential_meV = well_meV;
  p.electron.barrier.potential_meV = barrier_meV;
  p.heavy_hole.well.potential_meV = ingaas_gap_meV(indium_qw) - gap_d - well_meV;
  p.heavy_hole.barrier.potential_meV = ingaas_gap_meV(0.0) - gap_d - barrier_meV;
  return p;
}

BandProfile BandProfile::defaults() {
  return with_electron_offsets(0.30, 0.15, default_electron_well_meV, default_electron_barrier_meV);
}

void BandProfile::validate() const {
  for (const CarrierBands* c : {&electron, &heavy_hole}) {
    for (const Material* m : {&c->barrier, &c->dot, &c->well}) {
      if (!std::isfinite(m->potential_meV)) throw ValidationError("bands: non-finite potential");
      if (!(m->mass > 0.0)) throw ValidationError("bands: masses must be positive");
    }
    if (!(c->dot.potential_meV <= c->well.potential_meV &&
          c->well.potential_meV <= c->barrier.potential_meV))
      throw ValidationError("bands: expected dot <= well <= barrier band edges");
  }
}

ScalarField3D build_potential(const GridSpec& grid, const HeteroGeometry& geometry,
                              const BandProfile& bands, Carrier carrier, double min_margin_nm) {
  check_fits(grid, geometry, min_margin_nm);
  bands.validate();
  const CarrierBands& b = bands.bands(carrier);
  return fill(grid, geometry, [&](const Fractions& f) {
    return f.dot * b.dot.potential_meV + f.well * b.well.potential_meV +
           f.barrier * b.barrier.potential_meV;
  });
}

ScalarField3D build_mass_field(const GridSpec& grid, const HeteroGeometry& geometry,
                               const BandProfile& bands, Carrier carrier, double min_margin_nm) {
  check_fits(grid, geometry, min_margin_nm);
  bands.validate();
  const CarrierBands& b = bands.bands(carrier);
  return fill(grid, geometry, [&](const Fractions& f) {
    const double inv = f.dot / b.dot.mass + f.well / b.well.mass + f.barrier / b.barrier.mass;
    return 1.0 / inv;
  });
}

}  // namespace qnd
