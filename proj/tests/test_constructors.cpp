#include <catch_amalgamated.hpp>

#include "hyperchaos/constructors.hpp"

using namespace hyperchaos;

namespace {

const PLMap kTent = build_tent();
const PLMap kTwoHump({{0, Rational(1, 2)}, {Rational(1, 4), 1}, {Rational(1, 2), Rational(1, 2)},
                      {Rational(3, 4), 0}, {1, Rational(1, 2)}});
const PLMap kDoubleTent({{0, Rational(1, 2)}, {Rational(1, 4), 0}, {Rational(1, 2), Rational(1, 2)},
                         {Rational(3, 4), 1}, {1, Rational(1, 2)}});

CriteriaParams default_params() {
    CriteriaParams p;
    p.horizon = 512;
    return p;
}

bool trace_mentions(const HyperPairResult& r, const std::string& needle) {
    for (const auto& s : r.trace.stages)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("li-yorke pair construction on the tent map") {
    const VietorisBox bu({OpenInterval(0, Rational(1, 4))});
    const VietorisBox bv({OpenInterval(Rational(3, 4), 1)});
    const HyperPairResult r = construct_hyper_ly_pair(kTent, bu, bv, default_params());
    REQUIRE(r.ok);
    REQUIRE(r.verification->is_li_yorke());
    REQUIRE(vietoris_member(r.u, bu));
    REQUIRE(vietoris_member(r.v, bv));
    REQUIRE(r.verification->stats.tail_min <= dyadic(20));
}

TEST_CASE("li-yorke pair construction with several opens per box") {
    const VietorisBox bu({OpenInterval(0, Rational(1, 8)), OpenInterval(Rational(1, 4), Rational(3, 8))});
    const VietorisBox bv({OpenInterval(Rational(1, 2), Rational(5, 8)), OpenInterval(Rational(7, 8), 1)});
    const HyperPairResult r = construct_hyper_ly_pair(kTent, bu, bv, default_params());
    REQUIRE(r.ok);
    REQUIRE(r.u.part_count() == 2);
    REQUIRE(r.v.part_count() == 2);
    REQUIRE(vietoris_member(r.u, bu));
    REQUIRE(vietoris_member(r.v, bv));
    REQUIRE(r.verification->is_li_yorke());
}

TEST_CASE("identity map: construction fails in the k-search") {
    const VietorisBox bu({OpenInterval(0, Rational(1, 4))});
    const VietorisBox bv({OpenInterval(Rational(3, 4), 1)});
    const HyperPairResult r = construct_hyper_ly_pair(build_identity(), bu, bv, default_params());
    REQUIRE(!r.ok);
    REQUIRE(r.trace.failed_stage == "k-search");
}

TEST_CASE("coinciding full boxes route through case 3") {
    const VietorisBox full({OpenInterval(0, 1)});
    const HyperPairResult r = construct_hyper_ly_pair(kTent, full, full, default_params());
    REQUIRE(r.ok);
    REQUIRE(trace_mentions(r, "case 3"));
    REQUIRE(r.u.part_count() == 1);
    REQUIRE(r.v.part_count() == 1);
    // One family empty: both sets collapse to singleton orbits after k steps.
    REQUIRE(r.verification->is_li_yorke());
}

TEST_CASE("accordion stage six admits a plain li-yorke construction") {
    const VietorisBox bu({OpenInterval(0, Rational(1, 4))});
    const VietorisBox bv({OpenInterval(Rational(1, 2), Rational(2, 3))});
    const HyperPairResult r = construct_hyper_ly_pair(build_snoha_example(6), bu, bv,
                                                      default_params());
    REQUIRE(r.ok);
    REQUIRE(r.verification->is_li_yorke());
}

TEST_CASE("eps li-yorke construction on the tent map covering branch") {
    const VietorisBox bu({OpenInterval(0, Rational(1, 4))});
    const VietorisBox bv({OpenInterval(Rational(3, 4), 1)});
    const HyperPairResult r =
        construct_hyper_eps_ly_pair(kTent, bu, bv, Rational(1, 2), default_params());
    REQUIRE(r.ok);
    REQUIRE(trace_mentions(r, "all powers transitive"));
    REQUIRE(r.verification->is_eps_li_yorke());
    REQUIRE(r.verification->stats.tail_max > Rational(1, 2));
    REQUIRE(r.verification->stats.tail_min <= dyadic(20));
    REQUIRE(vietoris_member(r.u, bu));
    REQUIRE(vietoris_member(r.v, bv));
}

TEST_CASE("the involution admits no eps construction") {
    const PLMap flip({{0, 1}, {1, 0}});
    const VietorisBox bu({OpenInterval(0, Rational(1, 4))});
    const VietorisBox bv({OpenInterval(Rational(3, 4), 1)});
    const HyperPairResult r =
        construct_hyper_eps_ly_pair(flip, bu, bv, Rational(1, 4), default_params());
    REQUIRE(!r.ok);
    REQUIRE(r.trace.failed_stage == "transitive-intervals");
}

TEST_CASE("swapped halves fire the square-map branch") {
    const VietorisBox bu({OpenInterval(Rational(1, 16), Rational(3, 16))});
    const VietorisBox bv({OpenInterval(Rational(13, 16), Rational(15, 16))});
    const HyperPairResult r =
        construct_hyper_eps_ly_pair(kTwoHump, bu, bv, Rational(1, 4), default_params());
    REQUIRE(r.ok);
    REQUIRE(trace_mentions(r, "square map"));
    REQUIRE(r.verification->is_eps_li_yorke());
    REQUIRE(vietoris_member(r.u, bu));
    REQUIRE(vietoris_member(r.v, bv));
}

TEST_CASE("two transitive intervals fire the two-interval branch") {
    const VietorisBox bu({OpenInterval(Rational(1, 16), Rational(3, 16))});
    const VietorisBox bv({OpenInterval(Rational(13, 16), Rational(15, 16))});
    const HyperPairResult r =
        construct_hyper_eps_ly_pair(kDoubleTent, bu, bv, Rational(1, 8), default_params());
    REQUIRE(r.ok);
    REQUIRE(trace_mentions(r, "two transitive intervals"));
    REQUIRE(r.verification->is_eps_li_yorke());
    REQUIRE(vietoris_member(r.u, bu));
    REQUIRE(vietoris_member(r.v, bv));
}

TEST_CASE("constructed pairs are self-verifying") {
    // The verification inside the constructor re-classifies the returned sets;
    // re-doing it here guards the plumbing between the two.
    const VietorisBox bu({OpenInterval(0, Rational(1, 4))});
    const VietorisBox bv({OpenInterval(Rational(1, 2), 1)});
    const HyperPairResult r =
        construct_hyper_eps_ly_pair(kTent, bu, bv, Rational(1, 2), default_params());
    REQUIRE(r.ok);
    PairParams pp;
    pp.eps = Rational(1, 2);
    pp.tail_start = 0;
    const PairVerdict again = classify_set_pair(kTent, r.u, r.v, pp);
    REQUIRE(again.cls == r.verification->cls);
}
