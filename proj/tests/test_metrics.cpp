// Spectral- and energy-efficiency bookkeeping on top of the rate estimates.

#include "test_util.hpp"

#include "risnoma/errors.hpp"
#include "risnoma/metrics.hpp"
#include "risnoma/noma.hpp"

using namespace risnoma;

TEST_CASE("spectral efficiency is the plain sum of the receiver rates") {
    CHECK_REL(spectral_efficiency(2.0, 1.4594), 3.4594, 1e-12);
    CHECK(spectral_efficiency(0.0, 0.0) == 0.0);
    // four-significant-figure value quoted in the interface docs
    CHECK_REL(spectral_efficiency(11.693, 1.7366), 13.430, 5e-4);
}

TEST_CASE("energy efficiency divides by the full consumed-power budget") {
    EnergyModel em;
    em.alpha = 1.0;
    em.p_r_w = 1.0;
    em.p_re_w = 0.001;
    em.p_u_w = 0.1;
    em.p_static_w = 0.0;
    em.m_total = 100;
    // budget: (1+1)*1 + 100*0.001 + 2*0.1 + 0 = 2.3 W
    CHECK_REL(energy_efficiency(10.0, em), 4.3478260869565217391, 1e-12);
    CHECK(energy_efficiency(0.0, em) == 0.0);

    // every consumption term strictly lowers it
    const double base = energy_efficiency(10.0, em);
    EnergyModel t = em;
    t.alpha = 1.5;
    CHECK(energy_efficiency(10.0, t) < base);
    t = em;
    t.p_r_w = 2.0;
    CHECK(energy_efficiency(10.0, t) < base);
    t = em;
    t.p_re_w = 0.01;
    CHECK(energy_efficiency(10.0, t) < base);
    t = em;
    t.p_u_w = 0.2;
    CHECK(energy_efficiency(10.0, t) < base);
    t = em;
    t.p_static_w = 0.5;
    CHECK(energy_efficiency(10.0, t) < base);
    t = em;
    t.m_total = 200;
    CHECK(energy_efficiency(10.0, t) < base);
}

TEST_CASE("a non-positive power budget is a degenerate configuration") {
    EnergyModel zero;
    zero.alpha = 0.0;
    zero.p_r_w = 0.0;
    zero.p_re_w = 0.0;
    zero.p_u_w = 0.0;
    zero.p_static_w = 0.0;
    CHECK_THROWS_AS(energy_efficiency(10.0, zero), DegenerateConfigError);

    EnergyModel negative;
    negative.alpha = -2.0; // net negative amplifier draw
    negative.p_r_w = 1.0;
    negative.p_re_w = 0.0;
    negative.p_u_w = 0.0;
    negative.p_static_w = 0.0;
    CHECK_THROWS_AS(energy_efficiency(10.0, negative), DegenerateConfigError);
}

TEST_CASE("the scenario's energy model ties transmit power to its SNR") {
    const ScenarioConfig cfg;
    const EnergyModel em = energy_model_from(cfg);
    CHECK(em.p_r_w == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(em.alpha == 1.2);
    CHECK(em.p_re_w == 1e-4);
    CHECK(em.p_u_w == 1e-2);
    CHECK(em.p_static_w == 0.0);
    CHECK(em.m_total == 64);

    ScenarioConfig unit = cfg;
    unit.rho_r = 1.0;
    CHECK(energy_model_from(unit).p_r_w == doctest::Approx(1e-3).epsilon(1e-12));

    // at a fixed spectral efficiency, raising the SNR only burns power
    double prev = 1e300;
    for (double rho : {100.0, 1000.0, 10000.0}) {
        ScenarioConfig c = cfg;
        c.rho_r = rho;
        const double ee = energy_efficiency(10.0, energy_model_from(c));
        CHECK(ee < prev);
        prev = ee;
    }
}
