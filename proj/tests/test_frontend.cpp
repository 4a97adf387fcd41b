#include <cmath>
#include <random>

#include "doctest.h"
#include "qsc/channel.hpp"
#include "qsc/frontend.hpp"

using namespace qsc;

namespace {
double logistic(double l) { return 1.0 / (1.0 + std::exp(-l)); }
}  // namespace

TEST_CASE("exclusion products") {
    std::vector<double> in{2.0, 3.0, 4.0};
    std::vector<double> out(3);
    frontend::exclusion_products(in, out);
    CHECK(out[0] == doctest::Approx(12.0));
    CHECK(out[1] == doctest::Approx(8.0));
    CHECK(out[2] == doctest::Approx(6.0));

    // A zero entry must not poison the others (no division anywhere).
    std::vector<double> z{0.0, 3.0, 4.0};
    frontend::exclusion_products(z, out);
    CHECK(out[0] == doctest::Approx(12.0));
    CHECK(out[1] == doctest::Approx(0.0));
    CHECK(out[2] == doctest::Approx(0.0));
}

TEST_CASE("exclusion products stay linear in the symbol width") {
    const int m = 20;
    std::vector<double> in(m, 0.9), out(m);
    std::size_t ops = 0;
    frontend::exclusion_products(in, out, &ops);
    CHECK(ops <= 4 * static_cast<std::size_t>(m));
    for (double v : out) CHECK(v == doctest::Approx(std::pow(0.9, m - 1)).epsilon(1e-12));
}

TEST_CASE("initial LLR equals the marginal-BSC LLR") {
    for (int m = 1; m <= 20; ++m)
        for (double eps : {0.01, 0.1, 0.25}) {
            const ChannelParams p(m, eps);
            const double eb = marginal_bsc_eps(p);
            CHECK(frontend::init_llr(p) ==
                  doctest::Approx(std::log((1.0 - eb) / eb)).epsilon(1e-12));
        }
}

TEST_CASE("message form, direct form and brute force agree") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int m = 1; m <= 5; ++m)
        for (double eps : {0.05, 0.25, 0.4}) {
            const ChannelParams p(m, eps);
            for (int rep = 0; rep < 300; ++rep) {
                const std::uint32_t y = static_cast<std::uint32_t>(rng() & (p.q() - 1));
                std::vector<double> l_a(m);
                for (auto& v : l_a) v = u(rng);

                const auto state = frontend::analyze_symbol(y, l_a, p);
                const auto direct = frontend::app_llr_direct(y, l_a, p);

                // Oracle works on extrinsic agreement probabilities.
                std::vector<double> agree(m);
                for (int i = 0; i < m; ++i)
                    agree[i] = logistic((1 - 2 * static_cast<int>((y >> i) & 1)) * l_a[i]);
                const auto app = frontend::brute_force_marginal(y, agree, p);

                for (int i = 0; i < m; ++i) {
                    const int sgn = 1 - 2 * static_cast<int>((y >> i) & 1);
                    const double oracle = sgn * std::log(app[i] / (1.0 - app[i]));
                    CHECK(state.l_ch[i] + l_a[i] == doctest::Approx(oracle).epsilon(1e-10));
                    CHECK(direct[i] == doctest::Approx(oracle).epsilon(1e-10));
                }
            }
        }
}

TEST_CASE("symbol width one ignores the a-priori input") {
    const ChannelParams p(1, 0.2);
    const double mag = std::log(0.8 / 0.2);
    for (double la : {-5.0, 0.0, 3.0}) {
        std::vector<double> out(1);
        frontend::refresh(0, std::vector<double>{la}, p, out);
        CHECK(out[0] == doctest::Approx(mag).epsilon(1e-12));
        frontend::refresh(1, std::vector<double>{la}, p, out);
        CHECK(out[0] == doctest::Approx(-mag).epsilon(1e-12));
    }
}

TEST_CASE("zero a-priori input reproduces the initial LLR") {
    for (int m : {2, 4, 6}) {
        const ChannelParams p(m, 0.25);
        std::vector<double> l_a(m, 0.0), out(m);
        frontend::refresh(0, l_a, p, out);
        for (int i = 0; i < m; ++i)
            CHECK(out[i] == doctest::Approx(frontend::init_llr(p)).epsilon(1e-12));
    }
}

TEST_CASE("sign symmetry under received-symbol complement") {
    const ChannelParams p(4, 0.25);
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::uint32_t y = static_cast<std::uint32_t>(rng() & 15u);
        const std::uint32_t mask = static_cast<std::uint32_t>(rng() & 15u);
        std::vector<double> l_a(4), l_flip(4), out(4), out_flip(4);
        for (int i = 0; i < 4; ++i) {
            l_a[i] = u(rng);
            l_flip[i] = ((mask >> i) & 1) ? -l_a[i] : l_a[i];
        }
        frontend::refresh(y, l_a, p, out);
        frontend::refresh(y ^ mask, l_flip, p, out_flip);
        for (int i = 0; i < 4; ++i) {
            const double want = ((mask >> i) & 1) ? -out[i] : out[i];
            CHECK(out_flip[i] == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("stronger agreeing beliefs sharpen the channel LLR") {
    // As the other bits grow more confident they match the received symbol,
    // the effective crossover for bit i drops and |l_ch| grows.
    const ChannelParams p(3, 0.25);
    double prev = 0.0;
    for (double la : {0.0, 1.0, 2.0, 4.0, 8.0}) {
        std::vector<double> l_a{0.0, la, la}, out(3);
        frontend::refresh(0, l_a, p, out);  // y = 0, agreeing means positive l_a
        CHECK(out[0] > prev);
        prev = out[0];
    }
}

TEST_CASE("q-SC* with fair conditional bits matches the q-SC front end") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int m : {1, 2, 4}) {
        const ChannelParams p(m, 0.25);
        const QscStarParams ps(m, 0.25, std::vector<double>(m, 0.5));
        for (int rep = 0; rep < 200; ++rep) {
            const std::uint32_t y = static_cast<std::uint32_t>(rng() & (p.q() - 1));
            std::vector<double> l_a(m), out(m), out_star(m);
            for (auto& v : l_a) v = u(rng);
            frontend::refresh(y, l_a, p, out);
            frontend::refresh_qsc_star(y, l_a, ps, out_star);
            for (int i = 0; i < m; ++i)
                CHECK(out_star[i] == doctest::Approx(out[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("q-SC* update against brute-force marginalization") {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> e(0.1, 0.9);
    for (int m : {1, 2, 3, 4}) {
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<double> ec(m);
            for (auto& v : ec) v = e(rng);
            const QscStarParams ps(m, 0.2, ec);
            const std::uint32_t y = static_cast<std::uint32_t>(rng() & ((1u << m) - 1));
            std::vector<double> l_a(m), out(m);
            for (auto& v : l_a) v = u(rng);
            frontend::refresh_qsc_star(y, l_a, ps, out);

            std::vector<double> agree(m);
            for (int i = 0; i < m; ++i)
                agree[i] = logistic((1 - 2 * static_cast<int>((y >> i) & 1)) * l_a[i]);
            const auto app = frontend::brute_force_marginal_qsc_star(y, agree, ps);
            for (int i = 0; i < m; ++i) {
                const int sgn = 1 - 2 * static_cast<int>((y >> i) & 1);
                const double oracle = sgn * std::log(app[i] / (1.0 - app[i]));
                CHECK(out[i] + l_a[i] == doctest::Approx(oracle).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("front-end provider classes are consistent with the free functions") {
    const ChannelParams p(4, 0.25);
    SymbolBlock y(4, 3);
    y.symbols = {0b0101u, 0b1111u, 0b0010u};
    QscFrontEnd fe(y, p);
    std::vector<double> l_ch(12);
    fe.initial(l_ch);
    for (std::size_t j = 0; j < 3; ++j)
        for (int i = 0; i < 4; ++i)
            CHECK(l_ch[4 * j + i] ==
                  doctest::Approx((1 - 2 * y.bit(j, i)) * frontend::init_llr(p)).epsilon(1e-12));

    std::vector<double> extr(12);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (auto& v : extr) v = u(rng);
    fe.refresh(extr, l_ch);
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<double> want(4);
        frontend::refresh(y.symbols[j], std::vector<double>(extr.begin() + 4 * j, extr.begin() + 4 * (j + 1)),
                          p, want);
        for (int i = 0; i < 4; ++i)
            CHECK(l_ch[4 * j + i] == doctest::Approx(want[i]).epsilon(1e-12));
    }

    // With refresh disabled the provider keeps the initial LLRs.
    QscFrontEnd frozen(y, p, false);
    std::vector<double> base(12);
    frozen.initial(base);
    std::vector<double> after = base;
    frozen.refresh(extr, after);
    CHECK(after == base);
}
