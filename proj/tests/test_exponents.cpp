#include "doctest.h"

#include "tsmr/exponents.hpp"

using namespace tsmr;
using namespace tsmr::exponents;

namespace {

const ExtRat kInf = ExtRat::infinity();

}  // namespace

TEST_CASE("p_M closed form") {
    CHECK(p_M(1, Rat(1), ExtRat(Rat(3, 2))) == Rat(1, 2));
    CHECK(p_M(3, Rat(1), ExtRat(Rat(2))) == Rat(6, 7));
    CHECK(p_M(2, Rat(2), kInf) == Rat(0));  // all p > 0 admissible
}

TEST_CASE("p_c closed form and degeneracy") {
    CHECK(p_c(5, Rat(2), Rat(0), ExtRat(Rat(2))) == Rat(10, 7));
    // q' = 10/3 <=> q = 10/7.
    CHECK(p_c(5, Rat(2), Rat(0), ExtRat(Rat(10, 7))) == Rat(6, 5));
    CHECK(p_c(3, Rat(2), Rat(0), ExtRat(Rat(1))) == Rat(0));  // q' = inf degenerates
    CHECK_THROWS_AS(p_c(3, Rat(2), Rat(1), ExtRat(Rat(2))), ParameterError);
}

TEST_CASE("tilde_p_c closed form") {
    CHECK(tilde_p_c(3, Rat(2), Rat(0), ExtRat(Rat(2))) == Rat(6, 5));  // 2n/(n + m(1-beta))
    CHECK(tilde_p_c(3, Rat(2), Rat(0), ExtRat(Rat(6, 5))) == Rat(6, 7));
    CHECK(tilde_p_c(1, Rat(1), Rat(-1), ExtRat(Rat(1))) == Rat(1, 2));
}

TEST_CASE("p_c = 1 boundary is q' = 2n/(m(1-beta))") {
    // Symbolic sweep of the displayed equivalence.
    for (int n = 1; n <= 4; ++n)
        for (int mNum = 1; mNum <= 3; ++mNum)
            for (int bNum = -3; bNum <= 0; ++bNum) {
                const Rat m(mNum), beta(bNum, 2);
                const Rat qpBoundary = Rat(2 * n) / (m * (Rat(1) - beta));
                if (qpBoundary < Rat(2)) continue;  // q must stay in [1,2]
                const ExtRat q = ExtRat(qpBoundary).conjugate();
                if (!(ExtRat(Rat(1)) <= q && q <= ExtRat(Rat(2)))) continue;
                CHECK(p_c(n, m, beta, q) == Rat(1));
                CHECK(tilde_p_c(n, m, beta, q) == Rat(1));
            }
}

TEST_CASE("theorem 3.1 case split") {
    SUBCASE("n=3 case 2") {
        const auto r = thm31_range(3, Rat(2), Rat(0), ExtRat(Rat(6, 5)), kInf);
        CHECK(r.caseTag == "Thm3.1-case2");
        CHECK(r.interval.lo.value == ExtRat(Rat(6, 7)));
        CHECK(r.interval.lo.open);
        CHECK(r.interval.hi.value == ExtRat(Rat(2)));
        CHECK_FALSE(r.interval.hi.open);
    }
    SUBCASE("n=5 case 1") {
        const auto r = thm31_range(5, Rat(2), Rat(0), ExtRat(Rat(10, 7)), kInf);
        CHECK(r.caseTag == "Thm3.1-case1");
        CHECK(r.interval.lo.value == ExtRat(Rat(6, 5)));
    }
    SUBCASE("n=1 q=1 case 2") {
        const auto r = thm31_range(1, Rat(2), Rat(0), ExtRat(Rat(1)), kInf);
        CHECK(r.caseTag == "Thm3.1-case2");
        CHECK(r.interval.lo.value == ExtRat(Rat(1, 2)));
    }
    SUBCASE("M at the critical order claims nothing") {
        const auto r = thm31_range(1, Rat(2), Rat(0), ExtRat(Rat(2)), ExtRat(Rat(1, 4)));
        CHECK(r.hypothesisViolation);
    }
}

TEST_CASE("proposition 3.6 backward range") {
    const auto r = prop36_range(1, Rat(1), Rat(0), ExtRat(Rat(2)), ExtRat(Rat(3, 2)));
    CHECK_FALSE(r.hypothesisViolation);
    CHECK(r.interval.lo.value == ExtRat(Rat(1, 2)));
    CHECK(r.interval.hi.value == ExtRat(Rat(2)));
    CHECK(r.interval.hi.open);  // p < 2 strictly

    CHECK(prop36_range(1, Rat(1), Rat(0), ExtRat(Rat(2)), ExtRat(Rat(1, 2))).hypothesisViolation);
    CHECK(prop36_range(1, Rat(1), Rat(-1), ExtRat(Rat(2)), kInf).hypothesisViolation);
}

TEST_CASE("theorem 4.1 and proposition 4.2 dual ranges") {
    SUBCASE("q = inf is always case 2") {
        const auto r = thm41_range(3, Rat(2), Rat(0), kInf, kInf);
        CHECK(r.caseTag == "Thm4.1-case2");
        CHECK(r.interval.lo.value == ExtRat(Rat(2)));
        CHECK_FALSE(r.interval.lo.open);
        CHECK(r.interval.hi.value.is_inf());
        CHECK_FALSE(r.interval.hi.open);
    }
    SUBCASE("boundary q = 2n/(m(1-beta)) goes to case 1 with p_c' = inf") {
        const auto r = thm41_range(2, Rat(2), Rat(0), ExtRat(Rat(2)), kInf);
        CHECK(r.caseTag == "Thm4.1-case1");
        REQUIRE(!r.values.empty());
        CHECK(r.values.front().name == "p_c");
        CHECK(r.values.front().value == "1");
        CHECK(r.interval.hi.value.is_inf());
        CHECK(r.interval.hi.open);  // attainment unstated
        CHECK(r.provenance.find("attainment") != std::string::npos);
    }
    SUBCASE("prop 4.2 range and hypotheses") {
        const auto r = prop42_range(3, Rat(2), Rat(0), ExtRat(Rat(4)), kInf);
        CHECK(r.interval.lo.value == ExtRat(Rat(2)));
        CHECK(r.interval.hi.value.is_inf());
        CHECK_FALSE(r.interval.hi.open);
        CHECK(prop42_range(3, Rat(2), Rat(1), ExtRat(Rat(4)), kInf).hypothesisViolation);
    }
}

TEST_CASE("M_q and v(alpha, q)") {
    CHECK(M_q(Rat(1), 1, Rat(1), ExtRat(Rat(2))) == Rat(1));
    CHECK(M_q(Rat(1), 3, Rat(1), ExtRat(Rat(6, 5))) == Rat(2));
    CHECK(M_q(Rat(1), 3, Rat(1), kInf) == Rat(5, 2));  // |1/q - 1/2| at q = inf
    for (int n = 1; n <= 3; ++n)
        for (int b = -2; b <= 0; ++b)
            CHECK(v_exp(Rat(0), ExtRat(Rat(2)), n, Rat(2), Rat(b)) == (Rat(1) - Rat(b)) / Rat(2));
}

TEST_CASE("corollary 5.6 p_L case logic") {
    SUBCASE("forward A, n=5: inf(p_c,1) branch") {
        const auto r = cor56_pL(5, Rat(1), Rat(-1), ExtRat(Rat(10, 7)), Cor56Direction::AForward);
        CHECK(r.caseTag == "A3");
        CHECK(r.interval.lo.value == ExtRat(Rat(6, 5)));
    }
    SUBCASE("forward B, n=5 finite") {
        const auto r = cor56_pL(5, Rat(1), Rat(-1), ExtRat(Rat(10, 3)), Cor56Direction::BForward);
        CHECK(r.caseTag == "B-finite");
        CHECK(r.interval.hi.value == ExtRat(Rat(6)));
    }
    SUBCASE("forward B, mq > n reaches infinity inclusively") {
        const auto r = cor56_pL(3, Rat(1), Rat(-1), ExtRat(Rat(7)), Cor56Direction::BForward);
        CHECK(r.caseTag == "B-infty");
        CHECK(r.interval.hi.value.is_inf());
        CHECK_FALSE(r.interval.hi.open);
    }
    SUBCASE("backward directions produce ranges") {
        const auto a = cor56_pL(3, Rat(2), Rat(0), ExtRat(Rat(4)), Cor56Direction::ABackward);
        CHECK_FALSE(a.hypothesisViolation);
        CHECK(a.interval.lo.value == ExtRat(Rat(2)));
        const auto b = cor56_pL(3, Rat(2), Rat(0), ExtRat(Rat(3, 2)), Cor56Direction::BBackward);
        CHECK_FALSE(b.hypothesisViolation);
        CHECK(b.interval.hi.value == ExtRat(Rat(2)));
    }
}

TEST_CASE("presets reproduce the published ranges") {
    SUBCASE("pointwise-Gaussian presets") {
        const auto r = preset(Preset::Prop14Heat, 2);
        CHECK(r.interval.lo.value == ExtRat(Rat(2, 3)));
        CHECK(r.interval.hi.value.is_inf());
        CHECK_FALSE(r.interval.hi.open);
        CHECK(preset(Preset::Prop14Sqrt, 1).interval.lo.value == ExtRat(Rat(1, 2)));
        CHECK(preset(Preset::Prop15, 3).interval.lo.value == ExtRat(Rat(3, 4)));
    }
    SUBCASE("prop16 golden lower endpoints") {
        const Rat expected[] = {Rat(1, 2), Rat(2, 3), Rat(6, 7), Rat(1), Rat(6, 5), Rat(4, 3)};
        for (int n = 1; n <= 6; ++n) {
            const auto r = preset(Preset::Prop16, n);
            CHECK(r.interval.lo.value == ExtRat(expected[n - 1]));
            CHECK(r.interval.hi.value.is_inf());
            CHECK_FALSE(r.interval.hi.open);
            if (n >= 3) CHECK(r.interval.lo.limit);  // epsilon endpoint
        }
    }
    SUBCASE("prop17 golden endpoints") {
        const Rat lower[] = {Rat(1, 2), Rat(2, 3), Rat(6, 7), Rat(1), Rat(6, 5), Rat(4, 3)};
        for (int n = 1; n <= 6; ++n) {
            const auto r = preset(Preset::Prop17, n);
            CHECK(r.interval.lo.value == ExtRat(lower[n - 1]));
            if (n <= 4) {
                CHECK(r.interval.hi.value.is_inf());
                CHECK_FALSE(r.interval.hi.open);
            }
        }
        CHECK(preset(Preset::Prop17, 5).interval.hi.value == ExtRat(Rat(6)));
        CHECK(preset(Preset::Prop17, 5).interval.hi.limit);  // 6 + eps'
        CHECK(preset(Preset::Prop17, 6).interval.hi.value == ExtRat(Rat(4)));
    }
}

TEST_CASE("equivalence chain on a rational sweep") {
    // (tilde p_c = p_c) <=> (tilde p_c = 1) <=> (p_c = 1)
    //   <=> n/(2m) = (1-beta)/2 + (n/m)(1/q - 1/2).
    int checked = 0;
    for (int n = 1; n <= 6; ++n)
        for (int mNum = 1; mNum <= 4; ++mNum)
            for (int bNum = -8; bNum <= 3; ++bNum)
                for (int qNum = 4; qNum <= 16; ++qNum)
                    for (int qDen = 4; qDen <= 10; ++qDen) {
                        const Rat m(mNum), beta(bNum, 4);
                        if (!(beta < Rat(1))) continue;
                        const Rat q(qNum, qDen);
                        if (q < Rat(1) || q >= Rat(2)) continue;  // q = 2: p_c = tilde_p_c identically
                        const Rat pc = p_c(n, m, beta, ExtRat(q));
                        if (pc == Rat(0)) continue;  // q = 1 degeneracy
                        const Rat ptc = tilde_p_c(n, m, beta, ExtRat(q));
                        const bool eq1 = ptc == pc;
                        const bool eq2 = ptc == Rat(1);
                        const bool eq3 = pc == Rat(1);
                        const Rat lhs = Rat(n) / (Rat(2) * m);
                        const Rat rhs = (Rat(1) - beta) / Rat(2) +
                                        (Rat(n) / m) * (q.inv() - Rat(1, 2));
                        const bool eq4 = lhs == rhs;
                        CHECK(eq1 == eq2);
                        CHECK(eq2 == eq3);
                        CHECK(eq3 == eq4);
                        ++checked;
                    }
    CHECK(checked > 10000);
}

TEST_CASE("p_c and tilde_p_c are nondecreasing in q") {
    for (int n = 1; n <= 4; ++n)
        for (int mNum = 1; mNum <= 3; ++mNum)
            for (int bNum = -4; bNum <= 1; ++bNum) {
                const Rat m(mNum), beta(bNum, 2);
                if (!(beta < Rat(1))) continue;
                Rat prevPc(-1), prevPtc(-1);
                for (int k = 0; k <= 16; ++k) {
                    const Rat q = Rat(1) + Rat(k, 16);
                    const Rat pc = p_c(n, m, beta, ExtRat(q));
                    const Rat ptc = tilde_p_c(n, m, beta, ExtRat(q));
                    CHECK(pc >= prevPc);
                    CHECK(ptc >= prevPtc);
                    prevPc = pc;
                    prevPtc = ptc;
                }
            }
}

TEST_CASE("theorem 3.1 branch formulas agree at the case boundary") {
    for (int n = 1; n <= 6; ++n)
        for (int mNum = 1; mNum <= 3; ++mNum)
            for (int bNum = -4; bNum <= 1; ++bNum) {
                const Rat m(mNum), beta(bNum, 2);
                if (!(beta < Rat(1))) continue;
                const Rat qpBoundary = Rat(2 * n) / (m * (Rat(1) - beta));
                if (qpBoundary < Rat(2)) continue;
                const ExtRat q = ExtRat(qpBoundary).conjugate();
                if (!(ExtRat(Rat(1)) <= q && q <= ExtRat(Rat(2)))) continue;
                // With M = inf both branch formulas give lower endpoint 1.
                CHECK(p_c(n, m, beta, q) == Rat(1));
                const Rat ptc = tilde_p_c(n, m, beta, q);
                const Rat pm = p_M(n, m, kInf);
                CHECK((pm > ptc ? pm : ptc) == Rat(1));
            }
}

TEST_CASE("dual consistency of the two p_c forms") {
    // thm41's p_c with exponent q equals thm31's p_c with q replaced by q'.
    for (int n = 1; n <= 4; ++n)
        for (int mNum = 1; mNum <= 3; ++mNum)
            for (int bNum = -4; bNum <= 1; ++bNum)
                for (int k = 0; k <= 8; ++k) {
                    const Rat m(mNum), beta(bNum, 2);
                    if (!(beta < Rat(1))) continue;
                    const Rat q = Rat(2) + Rat(k);  // q in [2, 10]
                    const Rat dualForm = Rat(4 * n) / (Rat(2 * n) + m * (Rat(1) - beta) * q);
                    const ExtRat qp = ExtRat(q).conjugate();
                    if (!(ExtRat(Rat(1)) <= qp && qp <= ExtRat(Rat(2)))) continue;
                    CHECK(p_c(n, m, beta, qp) == dualForm);
                }
}

TEST_CASE("presets are reproduced by the general case logic for n = 1..10") {
    for (int n = 3; n <= 10; ++n) {
        {
            const auto pre = preset(Preset::Prop16, n);
            const auto gen = thm31_range(n, Rat(2), Rat(0), ExtRat(Rat(2 * n, n + 2)), kInf);
            CHECK(pre.interval.lo.value == gen.interval.lo.value);
        }
        {
            const auto pre = preset(Preset::Prop17, n);
            const auto lo = cor56_pL(n, Rat(1), Rat(-1), ExtRat(Rat(2 * n, n + 2)),
                                     Cor56Direction::AForward);
            CHECK(pre.interval.lo.value == lo.interval.lo.value);
            const auto hi = cor56_pL(n, Rat(1), Rat(-1), ExtRat(Rat(2 * n, n - 2)),
                                     Cor56Direction::BForward);
            CHECK(pre.interval.hi.value == hi.interval.hi.value);
        }
    }
}
