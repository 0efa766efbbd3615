#include "fsis/errors.hpp"
#include "fsis/model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fsis;

namespace {

ModelParams endemic(double alpha = 1.0)
{
    ModelParams p;
    p.beta = 0.7;
    p.gamma = 0.05;
    p.mu = 0.12;
    p.lambda = p.mu;
    p.alpha = alpha;
    p.I0 = 0.5 * (1.0 - 0.17 / 0.7);
    return p;
}

ModelParams critical()
{
    ModelParams p;
    p.beta = 0.7;
    p.gamma = 0.07;
    p.mu = 0.63;
    p.lambda = p.mu;
    p.I0 = 1.0 / 1.4;
    return p;
}

// Random rates with gamma + mu > 0.
struct RatesGen {
    std::mt19937_64 rng{2024};
    ModelParams operator()()
    {
        std::uniform_real_distribution<double> u(0.01, 3.0);
        ModelParams p;
        p.beta = u(rng);
        p.gamma = u(rng);
        p.mu = u(rng);
        p.lambda = p.mu;
        p.alpha = 1.0;
        p.I0 = 0.1;
        return p;
    }
};

} // namespace

TEST_CASE("derive on the endemic parameters")
{
    const DerivedParams d = derive(endemic());
    CHECK(d.sigma == doctest::Approx(4.11765).epsilon(1e-5));
    CHECK(d.c == doctest::Approx(0.757143).epsilon(1e-6));
    CHECK(d.b == doctest::Approx(0.53).epsilon(1e-12));
    REQUIRE(d.M.has_value());
    CHECK(*d.M == doctest::Approx(1.0 / 0.53).epsilon(1e-12));
    REQUIRE(d.r_alpha.has_value());
    CHECK(*d.r_alpha == doctest::Approx(std::sqrt(3.0) / 0.53).epsilon(1e-12));
}

TEST_CASE("derive at sigma = 1")
{
    const DerivedParams d = derive(critical());
    CHECK(d.sigma == 1.0);
    CHECK(d.c == 0.0);
    CHECK(d.b == 0.0);
    CHECK_FALSE(d.M.has_value());
    CHECK_FALSE(d.r_alpha.has_value());

    RatesGen gen;
    for (int i = 0; i < 100; ++i) {
        ModelParams p = gen();
        p.beta = p.gamma + p.mu;
        CHECK(std::abs(derive(p).c) < 1e-15);
    }
}

TEST_CASE("derive is scale consistent")
{
    RatesGen gen;
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = gen();
        const double k = 0.25 + 0.05 * i;
        ModelParams q = p;
        q.beta *= k;
        q.gamma *= k;
        q.mu *= k;
        const DerivedParams a = derive(p), b = derive(q);
        CHECK(b.sigma == doctest::Approx(a.sigma).epsilon(1e-14));
        CHECK(std::abs(b.c - a.c) < 1e-14);
        CHECK(std::abs(b.b - k * a.b) < 1e-13 * std::max(1.0, std::abs(k * a.b)));
    }
}

TEST_CASE("derive leaves M unset when b^(1/alpha) >= 1")
{
    ModelParams p = endemic();
    p.beta = 3.0;
    const DerivedParams d = derive(p);
    CHECK(d.c > 0.0);
    CHECK_FALSE(d.M.has_value());
    CHECK_FALSE(d.r_alpha.has_value());
}

TEST_CASE("parameter validation")
{
    CHECK_NOTHROW(endemic().validate());
    ModelParams p = endemic();
    p.beta = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = endemic();
    p.gamma = 0.0;
    p.mu = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    CHECK_THROWS_AS(derive(p), ValidationError);
    p = endemic();
    p.alpha = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.alpha = 1.01;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = endemic();
    p.I0 = 1.2;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    CHECK(p.S0() == 1.0 - p.I0);
}

TEST_CASE("logistic right-hand side")
{
    const ModelParams p = endemic();
    const DerivedParams d = derive(p);
    const LogisticRhs f = logistic_rhs(p, d);
    CHECK(f(0.0) == 0.0);
    CHECK(std::abs(f(d.c)) < 1e-14);
    CHECK(f(d.c / 2.0) == doctest::Approx(0.10032).epsilon(1e-4));
    CHECK(f(0.5 * d.c) > 0.0);
    CHECK(f(0.9) < 0.0);

    const ModelParams q = critical();
    const LogisticRhs g = logistic_rhs(q, derive(q));
    CHECK(g(0.0) == 0.0);
    for (double I = 0.01; I <= 1.0; I += 0.01)
        CHECK(g(I) < 0.0);
}

TEST_CASE("classical SIS closed form")
{
    const ModelParams p = endemic();
    const DerivedParams d = derive(p);
    const auto [I0, S0] = classical_sis(p, 0.0);
    CHECK(I0 == p.I0);
    CHECK(S0 == 1.0 - p.I0);
    CHECK(std::abs(classical_sis(p, 200.0).first - d.c) < 1e-12);

    // logistic oracle written the textbook way
    for (double t = 0.1; t < 5.0; t += 0.1) {
        const double ref = d.c / (1.0 + (d.c / p.I0 - 1.0) * std::exp(-d.b * t));
        CHECK(std::abs(classical_sis(p, t).first - ref) < 1e-14);
    }

    const ModelParams q = critical();
    CHECK(classical_sis(q, 1.0).first == doctest::Approx((1 / 1.4) / 1.5).epsilon(1e-14));
    CHECK(classical_sis(q, 1.0).first == doctest::Approx(0.47619).epsilon(1e-5));
}

TEST_CASE("classical SIS solves the ODE")
{
    for (const ModelParams& p : {endemic(), critical()}) {
        const LogisticRhs f = logistic_rhs(p, derive(p));
        double prev_err = 0.0;
        for (double h : {1e-2, 5e-3}) {
            double err = 0.0;
            for (double t = 0.2; t < 4.0; t += 0.2) {
                const double dI = (classical_sis(p, t + h).first - classical_sis(p, t - h).first) / (2.0 * h);
                err = std::max(err, std::abs(dI - f(classical_sis(p, t).first)));
            }
            CHECK(err < 1e-4);
            if (prev_err > 0.0)
                CHECK(err < 0.3 * prev_err); // second order: ratio 1/4
            prev_err = err;
        }
    }
}

TEST_CASE("population N(t)")
{
    ModelParams p = endemic(0.6);
    for (double t = 0.0; t <= 20.0; t += 0.5)
        CHECK(population_nt(p, 1000.0, t) == 1000.0);

    p.alpha = 1.0;
    p.lambda = p.mu + 0.1;
    CHECK(population_nt(p, 50.0, 2.0) == doctest::Approx(50.0 * std::exp(0.2)).epsilon(1e-12));

    p.alpha = 0.5;
    p.lambda = p.mu - 0.2;
    double prev = population_nt(p, 1.0, 0.0);
    CHECK(prev == 1.0);
    for (double t = 0.1; t <= 10.0; t += 0.1) {
        const double n = population_nt(p, 1.0, t);
        CHECK(n < prev);
        prev = n;
    }

    CHECK_THROWS_AS(population_nt(p, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(population_nt(p, 1.0, -1.0), DomainError);
}
