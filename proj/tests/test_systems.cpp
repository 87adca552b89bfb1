#include "doctest.h"

#include <cmath>

#include "shocklab/numerics.hpp"
#include "shocklab/system.hpp"

using namespace shocklab;

TEST_CASE("flux closed forms") {
    const auto burgers = make_burgers();
    CHECK(flux_at(burgers, StateVector(2.0))[0] == doctest::Approx(4.0).epsilon(1e-15));

    const auto iso = make_isentropic(pressure_rho2());
    const StateVector f = flux_at(iso, StateVector(1.0, 0.0));
    CHECK(f[0] == doctest::Approx(0.0));
    CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-15));

    const auto euler = make_euler(1.4);
    const StateVector g = flux_at(euler, StateVector(1.0, 0.0, 1.0));
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(g[2] == doctest::Approx(0.0));
}

TEST_CASE("flux rejects bad states") {
    const auto euler = make_euler(1.4);
    CHECK_THROWS_AS(flux_at(euler, StateVector(1.0, std::nan(""), 1.0)), Error);
    // partial vacuum (zero density with momentum) is not a state
    CHECK_THROWS_AS(flux_at(euler, StateVector(0.0, 0.1, 0.0)), Error);
    // the vacuum point itself is fine and maps to zero
    CHECK(flux_at(euler, StateVector(0.0, 0.0, 0.0)).norm() == 0.0);
}

TEST_CASE("entropy quantities") {
    const auto burgers = make_burgers();
    const auto q = entropy_quantities(burgers, StateVector(2.0));
    CHECK(q.eta == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q.grad[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q.flux == doctest::Approx(16.0 / 3.0).epsilon(1e-15));

    const auto euler = make_euler(1.4);
    CHECK(entropy_quantities(euler, StateVector(1.0, 0.0, 1.0)).eta ==
          doctest::Approx(0.0).epsilon(1e-15));

    const auto iso = make_isentropic(pressure_rho2());
    CHECK(entropy_quantities(iso, StateVector(1.0, 0.0)).eta ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("entropy gradient refuses vacuum") {
    const auto euler = make_euler(1.4);
    CHECK_THROWS_AS(entropy_quantities(euler, StateVector(0.0, 0.0, 0.0)), Error);
    try {
        entropy_quantities(euler, StateVector(0.0, 0.0, 0.0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::vacuum_gradient);
    }
}

TEST_CASE("extremal eigenvalues") {
    const auto burgers = make_burgers();
    const auto [bl, bp] = extremal_eigenvalues(burgers, StateVector(1.0));
    CHECK(bl == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(bp == doctest::Approx(2.0).epsilon(1e-15));

    const auto iso = make_isentropic(pressure_rho2());
    const auto [il, ip] = extremal_eigenvalues(iso, StateVector(1.0, 0.0));
    CHECK(il == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(ip == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    const auto euler = make_euler(1.4);
    const auto [el, ep] = extremal_eigenvalues(euler, StateVector(1.0, 0.0, 1.0));
    CHECK(el == doctest::Approx(-std::sqrt(0.56)).epsilon(1e-14));
    CHECK(ep == doctest::Approx(std::sqrt(0.56)).epsilon(1e-14));

    CHECK_THROWS_AS(extremal_eigenvalues(euler, StateVector(0.0, 0.0, 0.0)), Error);
    try {
        extremal_eigenvalues(euler, StateVector(0.0, 0.0, 0.0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::undefined_eigenvalue);
    }
}

TEST_CASE("eigenvalues match the flux Jacobian for m = 1") {
    const auto burgers = make_burgers();
    for (double u = -2.0; u <= 2.0; u += 0.17) {
        const auto [lm, lp] = extremal_eigenvalues(burgers, StateVector(u));
        const double ap = burgers.flux_jacobian(StateVector(u))(0, 0);
        CHECK(lm == ap);
        CHECK(lp == ap);
    }
}

TEST_CASE("compatibility audit") {
    const auto burgers = make_burgers();
    std::vector<StateVector> samples;
    for (int i = 0; i < 100; ++i) samples.push_back(StateVector(-2.0 + 4.0 * i / 99.0));
    CHECK(compatibility_check(burgers, samples).max_residual < 1e-10);

    // corrupted entropy flux: G + 0.01 u must be caught
    auto bad = burgers;
    bad.entropy_flux = [](const StateVector& u) {
        return 2.0 / 3.0 * u[0] * u[0] * u[0] + 0.01 * u[0];
    };
    const auto rep = compatibility_check(bad, samples);
    CHECK(rep.max_residual >= 1e-3);
    CHECK(!rep.pass);

    const auto euler = make_euler(1.4);
    DomainBox box;
    box.dim = 3;
    box.lo = {0.1, -2.0, 0.1};
    box.hi = {2.0, 2.0, 2.0};
    const auto es = sample_box(euler, box, 100, 3);
    CHECK(compatibility_check(euler, es).max_residual < 1e-7);

    CHECK_THROWS_AS(compatibility_check(burgers, {}), Error);
}

TEST_CASE("entropy Hessian is positive definite on the interior") {
    const auto iso = make_isentropic(pressure_power(1.4));
    DomainBox box;
    box.dim = 2;
    box.lo = {0.1, -3.0, 0.0};
    box.hi = {3.0, 3.0, 0.0};
    for (const auto& u : sample_box(iso, box, 60, 5))
        CHECK(entropy_hessian_min_eig(iso, u) > 0.0);

    const auto euler = make_euler(1.4);
    DomainBox ebox;
    ebox.dim = 3;
    ebox.lo = {0.1, -2.0, 0.1};
    ebox.hi = {2.0, 2.0, 2.0};
    for (const auto& u : sample_box(euler, ebox, 60, 5))
        CHECK(entropy_hessian_min_eig(euler, u) > 0.0);
}

TEST_CASE("descriptor maps are deterministic") {
    const auto euler = make_euler(1.4);
    const StateVector u(1.3, -0.4, 2.1);
    const StateVector f1 = euler.flux(u), f2 = euler.flux(u);
    for (int i = 0; i < 3; ++i) CHECK(f1[i] == f2[i]);
    CHECK(euler.entropy(u) == euler.entropy(u));
}

TEST_CASE("reflection flips flux, entropy flux and eigenvalues") {
    const auto iso = make_isentropic(pressure_rho2());
    const auto refl = reflected(iso);
    const StateVector u(1.2, 0.3);
    const StateVector f = iso.flux(u), g = refl.flux(u);
    for (int i = 0; i < 2; ++i) CHECK(g[i] == -f[i]);
    CHECK(refl.entropy_flux(u) == -iso.entropy_flux(u));
    const auto [lm, lp] = iso.eigenvalues(u);
    const auto [rm, rp] = refl.eigenvalues(u);
    CHECK(rm == -lp);
    CHECK(rp == -lm);
    CHECK(refl.entropy(u) == iso.entropy(u));
}

TEST_CASE("power-law pressure satisfies the entropy primitive relation") {
    const auto law = pressure_power(1.4);
    CHECK(law.S(1.0) == doctest::Approx(0.0));
    CHECK(law.dS(1.0) == doctest::Approx(0.0));
    for (double rho : {0.3, 0.8, 1.7, 2.5}) {
        const double h = 1e-6;
        const double spp = (law.dS(rho + h) - law.dS(rho - h)) / (2 * h);
        CHECK(spp == doctest::Approx(law.dP(rho) / rho).epsilon(1e-6));
    }
}
