#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "uipt.h"

namespace {
std::string take(char* s) {
    std::string out = s ? s : "";
    uipt_string_free(s);
    return out;
}
}  // namespace

TEST_CASE("C API: scalar rationals round-trip as strings") {
    char *num, *den;
    REQUIRE(uipt_phi(0, 3, &num, &den) == UIPT_OK);
    CHECK(take(num) == "5");
    CHECK(take(den) == "1");
    REQUIRE(uipt_partition_z(1, &num, &den) == UIPT_OK);
    CHECK(take(num) == "27");
    CHECK(take(den) == "16");
    REQUIRE(uipt_hitting_prob(1, 0, &num, &den) == UIPT_OK);
    CHECK(take(num) == "1");
    CHECK(take(den) == "3");
    REQUIRE(uipt_partition_z_theta(0, 0, 1, &num, &den) == UIPT_OK);
    CHECK(take(num) == "1");
    CHECK(take(den) == "1");
    double tail;
    REQUIRE(uipt_stable_half_tail(2.0 / 3.0, &tail) == UIPT_OK);
    CHECK(tail == doctest::Approx(0.6827).epsilon(1e-3));
}

TEST_CASE("C API: invalid arguments produce UIPT_EINVAL and a message") {
    char *num, *den;
    CHECK(uipt_phi(-1, 0, &num, &den) == UIPT_EINVAL);
    CHECK(std::strlen(uipt_last_error()) > 0);
    double out;
    CHECK(uipt_stable_half_tail(-1.0, &out) == UIPT_EINVAL);
    CHECK(std::string(uipt_strerror(UIPT_EBUDGET)) == "step budget exceeded");
}

TEST_CASE("C API: law tables expose exact masses") {
    uipt_law* law;
    REQUIRE(uipt_step_law_new(5, &law) == UIPT_OK);
    REQUIRE(uipt_law_rows(law) == 6);
    double mass = 0;
    for (long i = 0; i < uipt_law_rows(law); ++i) {
        long index;
        double dec;
        REQUIRE(uipt_law_row(law, i, &index, nullptr, nullptr, &dec) == UIPT_OK);
        mass += dec;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    long index;
    CHECK(uipt_law_row(law, 99, &index, nullptr, nullptr, nullptr) == UIPT_EINVAL);
    uipt_law_free(law);

    REQUIRE(uipt_free_peel_law_new(0, &law) == UIPT_OK);
    REQUIRE(uipt_law_rows(law) == 2);
    char *num, *den;
    double dec;
    REQUIRE(uipt_law_row(law, 1, &index, &num, &den, &dec) == UIPT_OK);
    CHECK(index == -1);
    CHECK(take(num) == "8");
    CHECK(take(den) == "9");
    uipt_law_free(law);
}

TEST_CASE("C API: samplers and chain runs are deterministic") {
    std::vector<long> a(500), b(500);
    REQUIRE(uipt_sample_steps(7, 500, 42, 3, a.data()) == UIPT_OK);
    REQUIRE(uipt_sample_steps(7, 500, 42, 3, b.data()) == UIPT_OK);
    CHECK(a == b);

    const std::vector<long> targets{0, 2};
    const std::vector<uint64_t> cps{16, 256, 4096};
    uipt_chain_result *r1, *r2;
    REQUIRE(uipt_chain_run(5, 4096, targets.data(), 2, cps.data(), 3, 1, 9, 9, &r1) == UIPT_OK);
    REQUIRE(uipt_chain_run(5, 4096, targets.data(), 2, cps.data(), 3, 1, 9, 9, &r2) == UIPT_OK);
    for (long i = 0; i < 3; ++i) {
        long m1, m2;
        REQUIRE(uipt_chain_checkpoint_m(r1, i, &m1) == UIPT_OK);
        REQUIRE(uipt_chain_checkpoint_m(r2, i, &m2) == UIPT_OK);
        CHECK(m1 == m2);
    }
    uint64_t absorbed, steps;
    long final_m, max_m;
    REQUIRE(uipt_chain_summary(r1, &absorbed, &steps, &final_m, &max_m) == UIPT_OK);
    CHECK(max_m >= final_m);
    uipt_chain_free(r1);
    uipt_chain_free(r2);
}

TEST_CASE("C API: growth handle, validation, export") {
    uipt_growth* g;
    REQUIRE(uipt_grow(4, UIPT_MODE_FULL, 7, 0, 0, 0, &g) == UIPT_OK);
    REQUIRE(uipt_growth_layers(g) == 4);
    uint64_t prev_t = 0;
    for (long i = 0; i < 4; ++i) {
        long r, m;
        uint64_t t, hull, ball;
        double vt2, vt3;
        REQUIRE(uipt_growth_layer(g, i, &r, &t, &m, &hull, &ball, &vt2, &vt3) == UIPT_OK);
        CHECK(r == i + 1);
        CHECK(t > prev_t);
        prev_t = t;
        CHECK(ball <= hull);
    }
    CHECK(uipt_growth_validate(g) == UIPT_OK);
    int completed, exceeded;
    uint64_t steps, hull;
    REQUIRE(uipt_growth_summary(g, &steps, &hull, &completed, &exceeded) == UIPT_OK);
    CHECK(completed == 1);
    CHECK(exceeded == 0);
    uipt_growth_free(g);

    REQUIRE(uipt_grow(4, UIPT_MODE_SKELETON, 7, 1, 0, 0, &g) == UIPT_OK);
    CHECK(uipt_growth_validate(g) == UIPT_EINVAL);  // no mesh in skeleton mode
    uipt_growth_free(g);
}

TEST_CASE("C API: percolation and fits") {
    int died;
    uint64_t death, maxb;
    REQUIRE(uipt_perc_run(UIPT_ENGINE_REDUCED, 0.0, 5000, 1, 0, &died, &death, &maxb) == UIPT_OK);
    CHECK(died == 1);
    CHECK(maxb == 1);

    double frac, lo, hi;
    REQUIRE(uipt_perc_survival(UIPT_ENGINE_REDUCED, 1.0, 1000, 50, 1, 0, 2, &frac, &lo, &hi) == UIPT_OK);
    CHECK(frac == 1.0);

    const std::vector<double> x{2, 4, 8, 16}, y{8, 64, 512, 4096};
    double slope, intercept, se;
    REQUIRE(uipt_fit_loglog(x.data(), y.data(), 4, &slope, &intercept, &se) == UIPT_OK);
    CHECK(slope == doctest::Approx(3.0).epsilon(1e-12));

    double p;
    REQUIRE(uipt_chi_square_pvalue(0.0, 3, &p) == UIPT_OK);
    CHECK(p == doctest::Approx(1.0));
}

TEST_CASE("C API: gof wrappers pass on honest samplers") {
    double stat, pv;
    long dof;
    int pass;
    REQUIRE(uipt_gof_step_law(5, 100000, 20, 0.001, 11, 0, &stat, &dof, &pv, &pass) == UIPT_OK);
    CHECK(pass == 1);
    REQUIRE(uipt_gof_free_size(3, 20000, 10, 0.001, 12, 0, &stat, &dof, &pv, &pass) == UIPT_OK);
    CHECK(pass == 1);
    double d;
    REQUIRE(uipt_gof_stable_limit(100, 1500, 13, 0, 0, &d) == UIPT_OK);
    CHECK(d < 0.12);
}
