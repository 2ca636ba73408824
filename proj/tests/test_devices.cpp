#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "polwig/crc.hpp"
#include "polwig/devices.hpp"

using namespace polwig;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("compensator_and_rotator_matrix_entries") {
  const double phi = 0.7;
  const DeviceSpec comp = compensator(phi);
  CHECK(std::abs(comp.matrix.hh - std::polar(1.0, 0.5 * phi)) < 1e-15);
  CHECK(std::abs(comp.matrix.vv - std::polar(1.0, -0.5 * phi)) < 1e-15);
  CHECK(std::abs(comp.matrix.hv) == 0.0);
  CHECK(std::abs(comp.matrix.vh) == 0.0);

  const double theta = 0.4;
  const DeviceSpec rot = rotator(theta);
  CHECK(rot.matrix.hh == Complex{std::cos(theta), 0.0});
  CHECK(rot.matrix.hv == Complex{std::sin(theta), 0.0});
  CHECK(rot.matrix.vh == Complex{-std::sin(theta), 0.0});
  CHECK(rot.matrix.vv == Complex{std::cos(theta), 0.0});
  CHECK(unitarity_defect(rot.matrix) < 1e-15);
  CHECK(unitarity_defect(comp.matrix) < 1e-15);
}

TEST_CASE("compose_multiplies_in_application_order") {
  const DeviceSpec a = compensator(0.3);
  const DeviceSpec b = rotator(0.9);
  const DeviceSpec ab = compose(b, a); // a acts first
  const Mat2 ref = mat2_mul(b.matrix, a.matrix);
  CHECK(std::abs(ab.matrix.hh - ref.hh) < 1e-15);
  CHECK(std::abs(ab.matrix.hv - ref.hv) < 1e-15);
  CHECK(std::abs(ab.matrix.vh - ref.vh) < 1e-15);
  CHECK(std::abs(ab.matrix.vv - ref.vv) < 1e-15);
  REQUIRE(ab.provenance.size() == 2);
  CHECK(ab.provenance[0].kind == FactorKind::compensator);
  CHECK(ab.provenance[0].param == 0.3);
  CHECK(ab.provenance[1].kind == FactorKind::rotator);
  CHECK(ab.provenance[1].param == 0.9);
}

TEST_CASE("crc_device_closed_form_entries") {
  const double phi_in = 0.5, theta = 0.8, phi_out = -0.3;
  const DeviceSpec dev = crc_device(phi_in, theta, phi_out);
  const double c = std::cos(theta), s = std::sin(theta);
  CHECK(std::abs(dev.matrix.hh -
                 std::polar(c, 0.5 * (phi_in + phi_out))) < 1e-15);
  CHECK(std::abs(dev.matrix.hv -
                 std::polar(s, 0.5 * (phi_out - phi_in))) < 1e-15);
  CHECK(std::abs(dev.matrix.vh +
                 std::polar(s, -0.5 * (phi_out - phi_in))) < 1e-15);
  CHECK(std::abs(dev.matrix.vv -
                 std::polar(c, -0.5 * (phi_in + phi_out))) < 1e-15);
  REQUIRE(dev.provenance.size() == 3);
  CHECK(dev.provenance[0].kind == FactorKind::compensator);
  CHECK(dev.provenance[1].kind == FactorKind::rotator);
  CHECK(dev.provenance[2].kind == FactorKind::compensator);
}

TEST_CASE("apply_device_maps_branch_amplitudes") {
  const Complex a{0.9, -0.2};
  const Complex b{0.4, 0.6};
  const double theta = 0.6;
  const CoherentSuperposition out =
      apply_device(make_coherent(a, b), rotator(theta));
  const double c = std::cos(theta), s = std::sin(theta);
  CHECK(std::abs(out.terms[0].amp_h - (c * a + s * b)) < 1e-15);
  CHECK(std::abs(out.terms[0].amp_v - (-s * a + c * b)) < 1e-15);
  CHECK(std::abs(out.terms[0].coeff - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("apply_device_guards_input") {
  CoherentSuperposition raw;
  raw.terms = {{{1.0, 0.0}, {0.5, 0.0}, {0.0, 0.0}}};
  REQUIRE_THROWS_AS(apply_device(raw, rotator(0.1)), UnnormalizedState);

  DeviceSpec broken = rotator(0.1);
  broken.matrix.hh *= 1.5;
  REQUIRE_THROWS_WITH(apply_device(make_coherent(0.5, 0.0), broken),
                      ContainsSubstring("unitary"));
}

TEST_CASE("inverse_device_round_trips") {
  const DeviceSpec dev = crc_device(0.4, 1.1, -0.7);
  const CoherentSuperposition psi = make_psi1({1.0, 0.3}, {-0.6, 0.1});
  const CoherentSuperposition back =
      apply_device(apply_device(psi, dev), inverse(dev));
  for (size_t i = 0; i < psi.terms.size(); ++i) {
    CHECK(std::abs(back.terms[i].amp_h - psi.terms[i].amp_h) < 1e-14);
    CHECK(std::abs(back.terms[i].amp_v - psi.terms[i].amp_v) < 1e-14);
  }
  const Mat2 prod = mat2_mul(inverse(dev).matrix, dev.matrix);
  CHECK(std::abs(prod.hh - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(prod.vv - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(prod.hv) < 1e-15);
  CHECK(std::abs(prod.vh) < 1e-15);
}

TEST_CASE("concurrence_requires_two_branches") {
  REQUIRE_THROWS_AS(concurrence(make_coherent(1.0, 0.0)),
                    UnsupportedBranchCount);
}

TEST_CASE("concurrence_known_values") {
  // psi1(2, -2): C = (1 - e^-16) / (1 + e^-16), nearly maximal.
  const double e16 = std::exp(-16.0);
  CHECK(concurrence(make_psi1(2.0, -2.0)) ==
        Approx((1.0 - e16) / (1.0 + e16)).margin(1e-14));
  CHECK(concurrence(make_psi1(1.0, -1.0)) ==
        Approx(0.9640275800758169).margin(1e-14));
  // psi2 branches sit at +/- alpha in both modes; per-mode overlap
  // magnitude e^{-2|alpha|^2} squared gives C through the same form.
  const double e26 = std::exp(-4.0 * 0.65);
  CHECK(concurrence(make_psi2({0.7, 0.4})) ==
        Approx((1.0 - e26) / (1.0 + e26)).margin(1e-14));
  // Identical branches carry no entanglement.
  CHECK(concurrence(make_psi1({0.9, 0.1}, {0.9, 0.1})) < 1e-12);
}

TEST_CASE("concurrence_is_invariant_under_compensators") {
  const CoherentSuperposition psi = make_psi1({1.2, 0.0}, {-0.5, 0.4});
  const double base = concurrence(psi);
  for (double phi : {0.3, 1.0, -2.2}) {
    CHECK(concurrence(apply_device(psi, compensator(phi))) ==
          Approx(base).margin(1e-12));
  }
}

TEST_CASE("quarter_turn_rotator_disentangles_real_psi1") {
  // R(pi/4) sends both branches of psi1(alpha, beta) with real parameters to
  // the same H amplitude, so one factor of the concurrence vanishes.
  const CoherentSuperposition psi = make_psi1(3.0, 1.0);
  for (double phi1 : {0.0, M_PI / 8, M_PI / 6, M_PI / 4}) {
    const DeviceSpec dev = crc_device(0.0, M_PI / 4, phi1);
    CHECK(concurrence(apply_device(psi, dev)) < 1e-10);
  }
}

TEST_CASE("crc_sweep_orders_rows_phi1_outer_theta_inner") {
  const CoherentSuperposition psi = make_psi1(1.0, -1.0);
  const std::vector<double> thetas{0.2, 0.7};
  const std::vector<double> phi1s{0.0, 0.5};
  NwfPolicy policy;
  policy.nodes_per_axis = 48;
  const auto rows = crc_sweep(psi, thetas, phi1s, 0.1, policy);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].phi1 == 0.0);
  CHECK(rows[0].theta == 0.2);
  CHECK(rows[1].phi1 == 0.0);
  CHECK(rows[1].theta == 0.7);
  CHECK(rows[2].phi1 == 0.5);
  CHECK(rows[2].theta == 0.2);
  CHECK(rows[3].phi1 == 0.5);
  CHECK(rows[3].theta == 0.7);
  for (const CrcRow& r : rows) {
    CHECK(r.phi2 == 0.1);
    const CoherentSuperposition out =
        apply_device(psi, crc_device(0.1, r.theta, r.phi1));
    CHECK(r.concurrence_value == Approx(concurrence(out)).margin(1e-13));
  }
}
