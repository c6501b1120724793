#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dlw/errors.hpp"
#include "dlw/faithful.hpp"
#include "dlw/translate.hpp"
#include "oracles.hpp"

using namespace dlw;
using namespace dlw::testing;

namespace {

Formula v(const char* name) { return Formula::var(name); }
Formula neg(Formula f) { return Formula::negation(f); }
constexpr Formula (*conj)(Formula, Formula) = &Formula::conjunction;
constexpr Formula (*imp)(Formula, Formula) = &Formula::implication;
Formula tru() { return Formula::constant(true); }

Default mk(Formula prec, Formula just, Formula cons) {
  return Default{prec, just, cons, std::nullopt};
}

DefaultTheory pair_theory() {
  return DefaultTheory({mk(tru(), v("a"), v("b")), mk(tru(), neg(v("a")), v("b"))}, {});
}

Qbf2 qbf(const AtomSet& xs, const AtomSet& ys, const AtomSet& zs, Formula matrix) {
  return Qbf2{xs, ys, zs, matrix};
}

}  // namespace

TEST_CASE("t_cr is seminormalization") {
  DefaultTheory t({mk(tru(), v("a"), v("b"))}, {});
  const DefaultTheory& out = t_cr(t).get().theory;
  REQUIRE(out.defaults().size() == 1);
  CHECK(out.defaults()[0].prec == tru());
  CHECK(out.defaults()[0].just == conj(v("a"), v("b")));
  CHECK(out.defaults()[0].cons == v("b"));

  SUBCASE("normal defaults keep the duplicated conjunct") {
    DefaultTheory normal({mk(v("p"), v("g"), v("g"))}, {});
    Formula just = t_cr(normal).get().theory.defaults()[0].just;
    CHECK(just == conj(v("g"), v("g")));
    CHECK(equivalent(just, v("g")));
  }

  SUBCASE("constrained extensions of the source are the rational extensions of the target") {
    DefaultTheory src = pair_theory();
    auto src_exts = extensions(src, SemanticsId::Constrained);
    auto tgt_exts = extensions(t_cr(src).get().theory, SemanticsId::Rational);
    REQUIRE(src_exts.size() == 1);
    REQUIRE(tgt_exts.size() == 1);
    CHECK(equivalent(generator_formula(src_exts[0]), generator_formula(tgt_exts[0])));
    CHECK(equivalent(generator_formula(tgt_exts[0]), v("b")));
  }
}

TEST_CASE("t_jc builds one alphabet per default") {
  DefaultTheory t({mk(tru(), v("a"), v("b"))}, {});
  const TranslatedTheory& out = t_jc(t).get();
  REQUIRE(out.theory.defaults().size() == 1);
  CHECK(out.theory.defaults()[0].just == v("a__c1"));
  CHECK(out.theory.defaults()[0].cons == conj(v("b"), v("b__c1")));
  CHECK(out.theory.background().empty());
  REQUIRE(out.fresh.indexed.size() == 1);
  CHECK(out.fresh.indexed[0].at(Atom{"a"}) == Atom{"a__c1"});

  SUBCASE("copies are disjoint from the source alphabet") {
    for (const auto& map : out.fresh.indexed) {
      for (const auto& [from, to] : map) CHECK_FALSE(t.vars().count(to));
    }
  }

  SUBCASE("background is copied onto every alphabet") {
    DefaultTheory withw({mk(tru(), v("a"), v("b")), mk(tru(), v("b"), v("a"))}, {v("a")});
    const DefaultTheory& tw = t_jc(withw).get().theory;
    REQUIRE(tw.background().size() == 3);
    CHECK(tw.background()[1] == v("a__c1"));
    CHECK(tw.background()[2] == v("a__c2"));
  }

  SUBCASE("justified source extensions correspond bijectively") {
    for (const DefaultTheory& src :
         {pair_theory(), DefaultTheory({mk(tru(), v("a"), neg(v("a")))}, {})}) {
      auto report = check_faithful(src, SemanticsId::Justified, t_jc(src).get().theory,
                                   SemanticsId::Constrained, src.vars());
      CHECK(report.faithful);
      CHECK(report.bijective);
      CHECK(extensions(src, SemanticsId::Justified).size() ==
            extensions(t_jc(src).get().theory, SemanticsId::Constrained).size());
    }
  }
}

TEST_CASE("t_rc emits the e/n/g/s defaults") {
  DefaultTheory t({mk(tru(), v("p"), v("q"))}, {});
  TranslateOptions opt;
  opt.verify_strongest = false;
  const TranslatedTheory& out = t_rc(t, v("q"), opt).get();
  REQUIRE(out.theory.defaults().size() == 4);
  Formula a = v("__a");
  Formula b = v("__b");
  Formula z1 = v("__z1");

  const Default& e1 = out.theory.defaults()[0];
  CHECK(e1.prec == imp(a, tru()));
  CHECK(e1.just == conj(v("p__p"), v("q__p")));
  CHECK(e1.cons == conj(conj(z1, imp(a, v("q"))), imp(b, v("p"))));

  const Default& n1 = out.theory.defaults()[1];
  CHECK(n1.prec == conj(imp(a, tru()), imp(conj(a, b), neg(v("p")))));
  CHECK(n1.just == tru());
  CHECK(n1.cons == z1);

  const Default& g = out.theory.defaults()[2];
  CHECK(g.prec == imp(imp(a, tru()), z1));
  CHECK(g.just == conj(a, neg(v("q"))));
  CHECK(g.cons == conj(conj(a, neg(b)), z1));

  const Default& s = out.theory.defaults()[3];
  CHECK(s.prec == tru());
  CHECK(s.just == tru());
  CHECK(s.cons == conj(conj(conj(neg(a), neg(b)), v("q")), z1));

  CHECK(out.fresh.a == Atom{"__a"});
  CHECK(out.fresh.b == Atom{"__b"});
  CHECK(out.fresh.z == std::vector<Atom>{Atom{"__z1"}});
  CHECK(out.fresh.primed.at(Atom{"p"}) == Atom{"p__p"});
}

TEST_CASE("t_rc background conditioning") {
  DefaultTheory t({mk(tru(), v("p"), v("q"))}, {v("p"), v("q")});
  TranslateOptions opt;
  opt.verify_strongest = false;
  const DefaultTheory& out = t_rc(t, conj(v("p"), v("q")), opt).get().theory;
  REQUIRE(out.background().size() == 2);
  CHECK(out.background()[0] == imp(v("__a"), conj(v("p"), v("q"))));
  CHECK(out.background()[1] == conj(v("p__p"), v("q__p")));
}

TEST_CASE("t_rc contract checks") {
  DefaultTheory t = pair_theory();
  CHECK(t_rc(t, std::nullopt).is_bottom());
  CHECK_THROWS_AS(t_rc(t, v("zz")), ContractError);
  // b alone is the rational extension; a stronger formula is rejected.
  CHECK_THROWS_AS(t_rc(t, conj(v("a"), v("b"))), ContractError);
  CHECK_NOTHROW(t_rc(t, v("b")));
}

TEST_CASE("t_rc simulates rational extensions in constrained semantics") {
  std::mt19937 rng(808);
  RandomTheoryOptions opt;
  opt.max_atoms = 3;
  opt.max_defaults = 2;
  int done = 0;
  for (int round = 0; round < 60 && done < 12; ++round) {
    DefaultTheory t = random_theory(rng, opt);
    auto strongest = strongest_extensions(t, SemanticsId::Rational);
    if (strongest.empty()) continue;
    ++done;
    for (const Extension& e : strongest) {
      Formula ef = generator_formula(e);
      const DefaultTheory& target = t_rc(t, ef).get().theory;
      auto report =
          check_faithful(t, SemanticsId::Rational, target, SemanticsId::Constrained, t.vars());
      CHECK(report.bijective);

      // Exactly one target extension projects onto the chosen strongest one.
      auto tgt_exts = extensions(target, SemanticsId::Constrained);
      int hits = 0;
      for (const Extension& te : tgt_exts) {
        if (var_equivalent(generator_formula(te), ef, t.vars())) ++hits;
      }
      CHECK(hits == 1);
    }
  }
  CHECK(done >= 12);
}

TEST_CASE("t_rj emits the e/n/g/s defaults without b") {
  DefaultTheory t({mk(tru(), v("p"), v("q"))}, {});
  TranslateOptions opt;
  opt.verify_strongest = false;
  const TranslatedTheory& out = t_rj(t, v("q"), opt).get();
  REQUIRE(out.theory.defaults().size() == 4);
  Formula a = v("__a");
  Formula z1 = v("__z1");

  const Default& e1 = out.theory.defaults()[0];
  CHECK(e1.prec == imp(a, tru()));
  CHECK(e1.just == v("p__p"));
  CHECK(e1.cons == conj(z1, imp(a, v("q"))));

  const Default& n1 = out.theory.defaults()[1];
  CHECK(n1.prec == conj(imp(a, tru()), imp(a, neg(v("p")))));
  CHECK(n1.cons == z1);

  const Default& g = out.theory.defaults()[2];
  CHECK(g.just == neg(v("q")));
  // a & (p <-> p') & (q <-> q') & z1
  CHECK(g.cons == conj(conj(conj(a, Formula::biconditional(v("p"), v("p__p"))),
                            Formula::biconditional(v("q"), v("q__p"))),
                       z1));

  const Default& s = out.theory.defaults()[3];
  CHECK(s.cons == conj(conj(neg(a), v("q")), z1));
  CHECK_FALSE(out.fresh.b.has_value());

  DefaultTheory withw({mk(tru(), v("p"), v("q"))}, {v("p")});
  const DefaultTheory& tw = t_rj(withw, conj(v("p"), v("q")), opt).get().theory;
  REQUIRE(tw.background().size() == 1);
  CHECK(tw.background()[0] == imp(v("__a"), v("p")));
}

TEST_CASE("strongest-extension routes over every single-default pool theory") {
  Formula p = v("p");
  Formula q = v("q");
  std::vector<Formula> pool = {tru(), p, q, neg(p), imp(p, q)};
  for (Formula a : pool) {
    for (Formula b : pool) {
      for (Formula c : pool) {
        DefaultTheory t({mk(a, b, c)}, {});
        for (const Extension& s : strongest_extensions(t, SemanticsId::Rational)) {
          TranslationResult rc = t_rc(t, generator_formula(s));
          CHECK(check_faithful(t, SemanticsId::Rational, rc.get().theory,
                               SemanticsId::Constrained, t.vars())
                    .bijective);
        }
        for (const Extension& s : strongest_extensions(t, SemanticsId::Reiter)) {
          TranslationResult rj = t_rj(t, generator_formula(s));
          CHECK(check_faithful(t, SemanticsId::Reiter, rj.get().theory,
                               SemanticsId::Justified, t.vars())
                    .bijective);
        }
      }
    }
  }
}

TEST_CASE("t_rj simulates Reiter extensions in justified semantics") {
  std::mt19937 rng(4711);
  RandomTheoryOptions opt;
  opt.max_atoms = 3;
  opt.max_defaults = 2;
  int done = 0;
  for (int round = 0; round < 60 && done < 10; ++round) {
    DefaultTheory t = random_theory(rng, opt);
    auto strongest = strongest_extensions(t, SemanticsId::Reiter);
    if (strongest.empty()) continue;
    ++done;
    Formula ef = generator_formula(strongest.front());
    TranslationResult result = t_rj(t, ef);
    const DefaultTheory& target = result.get().theory;
    auto report =
        check_faithful(t, SemanticsId::Reiter, target, SemanticsId::Justified, t.vars());
    CHECK(report.bijective);

    // Composing with t_jc reaches constrained semantics.
    const DefaultTheory& composed = t_jc(target).get().theory;
    auto report2 =
        check_faithful(t, SemanticsId::Reiter, composed, SemanticsId::Constrained, t.vars());
    CHECK(report2.bijective);
  }
  CHECK(done >= 10);
}

TEST_CASE("add_known_extension") {
  DefaultTheory t({mk(tru(), v("a0"), neg(v("a0")))}, {});
  const TranslatedTheory& out = add_known_extension(t).get();
  REQUIRE(out.theory.defaults().size() == 3);
  Formula a = v("__a");
  CHECK(out.theory.defaults()[0].just == a);
  CHECK(out.theory.defaults()[0].cons == a);
  CHECK(out.theory.defaults()[1].just == neg(a));
  CHECK(out.theory.defaults()[2].prec == conj(neg(a), tru()));

  SUBCASE("an extensionless Reiter theory gains exactly the known extension") {
    CHECK(extensions(t, SemanticsId::Reiter).empty());
    auto exts = extensions(out.theory, SemanticsId::Reiter);
    REQUIRE(exts.size() == 1);
    CHECK(equivalent(generator_formula(exts[0]), a));
  }

  SUBCASE("all semantics keep the source extensions, guarded by !a") {
    std::mt19937 rng(5150);
    RandomTheoryOptions opt;
    opt.max_defaults = 3;
    for (int round = 0; round < 10; ++round) {
      DefaultTheory src = random_theory(rng, opt);
      const TranslatedTheory& tr = add_known_extension(src).get();
      Formula fresh_a = Formula::var(*tr.fresh.a);
      for (SemanticsId sem :
           {SemanticsId::Reiter, SemanticsId::Justified, SemanticsId::Rational,
            SemanticsId::Constrained}) {
        auto src_exts = extensions(src, sem);
        auto tgt_exts = extensions(tr.theory, sem);
        REQUIRE(tgt_exts.size() == src_exts.size() + 1);
        for (const Extension& se : src_exts) {
          Formula wanted = conj(generator_formula(se), neg(fresh_a));
          int hits = 0;
          for (const Extension& te : tgt_exts) {
            if (equivalent(generator_formula(te), wanted)) ++hits;
          }
          CHECK(hits == 1);
        }
        Formula a_ext = conj(Formula::conjoin_all(src.background()), fresh_a);
        int a_hits = 0;
        for (const Extension& te : tgt_exts) {
          if (equivalent(generator_formula(te), a_ext)) ++a_hits;
        }
        CHECK(a_hits == 1);
      }
    }
  }

  SUBCASE("empty default set yields exactly two extensions") {
    DefaultTheory empty({}, {v("w")});
    const TranslatedTheory& tr = add_known_extension(empty).get();
    CHECK(extensions(tr.theory, SemanticsId::Reiter).size() == 2);
  }
}

TEST_CASE("combine_with_selector") {
  DefaultTheory t1({mk(tru(), v("p"), v("p"))}, {});
  const TranslatedTheory& out = combine_with_selector(t1, t1).get();
  REQUIRE(out.theory.defaults().size() == 4);
  Formula b = v("__b");
  CHECK(out.theory.defaults()[2].prec == conj(b, tru()));
  CHECK(out.theory.defaults()[3].prec == conj(neg(b), tru()));

  auto exts = extensions(out.theory, SemanticsId::Reiter);
  REQUIRE(exts.size() == 2);
  bool saw_pos = false, saw_neg = false;
  for (const Extension& e : exts) {
    if (equivalent(generator_formula(e), conj(b, v("p")))) saw_pos = true;
    if (equivalent(generator_formula(e), conj(neg(b), v("p")))) saw_neg = true;
  }
  CHECK(saw_pos);
  CHECK(saw_neg);

  SUBCASE("a failing branch contributes nothing") {
    DefaultTheory failing({mk(tru(), v("p"), neg(v("p")))}, {});
    const TranslatedTheory& combined = combine_with_selector(t1, failing).get();
    CHECK(extensions(combined.theory, SemanticsId::Reiter).size() == 1);
  }

  SUBCASE("selector defaults alone give both selector extensions") {
    DefaultTheory empty1({}, {});
    const TranslatedTheory& combined = combine_with_selector(empty1, empty1).get();
    CHECK(extensions(combined.theory, SemanticsId::Reiter).size() == 2);
  }

  SUBCASE("nonempty backgrounds are rejected") {
    DefaultTheory withw({mk(tru(), v("p"), v("p"))}, {v("q")});
    CHECK_THROWS_AS(combine_with_selector(withw, t1), ContractError);
  }
}

TEST_CASE("gen_sigma2_rational") {
  CHECK_THROWS_AS(gen_sigma2_rational(qbf({Atom{"x"}}, {}, {Atom{"z"}}, v("x"))),
                  ContractError);

  struct Case {
    Qbf2 q;
    std::size_t expected;
  };
  Case cases[] = {
      {qbf({Atom{"x"}}, {}, {}, v("x")), 1},
      {qbf({Atom{"x"}}, {Atom{"y"}}, {}, conj(v("x"), v("y"))), 0},
      {qbf({Atom{"x"}}, {Atom{"y"}}, {}, Formula::disjunction(v("x"), v("y"))), 1},
  };
  for (const Case& c : cases) {
    CHECK(tt_qbf_valid(c.q, {}) == (c.expected == 1));
    CHECK(qbf2_valid(c.q) == (c.expected == 1));
    DefaultTheory t = gen_sigma2_rational(c.q);
    CHECK(extensions(t, SemanticsId::Rational).size() == c.expected);
  }
}

TEST_CASE("gen_one_or_two") {
  Qbf2 valid = qbf({Atom{"x"}}, {Atom{"y"}}, {}, Formula::disjunction(v("x"), v("y")));
  Qbf2 invalid = qbf({Atom{"x"}}, {Atom{"y"}}, {}, conj(v("x"), v("y")));

  DefaultTheory tv = gen_one_or_two(valid);
  for (SemanticsId sem : {SemanticsId::Rational, SemanticsId::Constrained}) {
    auto exts = extensions(tv, sem);
    REQUIRE(exts.size() == 2);
    Formula na_nb = conj(neg(v("__a")), neg(v("__b")));
    Formula na_b = conj(neg(v("__a")), v("__b"));
    bool saw_nb = false, saw_b = false;
    for (const Extension& e : exts) {
      if (equivalent(generator_formula(e), na_nb)) saw_nb = true;
      if (equivalent(generator_formula(e), na_b)) saw_b = true;
    }
    CHECK(saw_nb);
    CHECK(saw_b);
  }

  DefaultTheory ti = gen_one_or_two(invalid);
  for (SemanticsId sem : {SemanticsId::Rational, SemanticsId::Constrained}) {
    auto exts = extensions(ti, sem);
    REQUIRE(exts.size() == 1);
    CHECK(equivalent(generator_formula(exts[0]), conj(neg(v("__a")), neg(v("__b")))));
  }
}

TEST_CASE("gen_assignment") {
  EnumerationOptions wide{12};

  SUBCASE("free variable with conditional matrix") {
    Qbf2 q = qbf({Atom{"x"}}, {Atom{"y"}}, {Atom{"z"}},
                 imp(v("z"), Formula::disjunction(v("x"), v("y"))));
    CHECK(tt_qbf_count_valid(q) == 2);
    CHECK(qbf2_count_valid_assignments(q) == 2);
    DefaultTheory t = gen_assignment(q);
    for (SemanticsId sem : {SemanticsId::Rational, SemanticsId::Constrained}) {
      CHECK(extensions(t, sem, wide).size() == 4);
    }
  }

  SUBCASE("unsatisfiable restrictions") {
    Qbf2 q = qbf({Atom{"x"}}, {Atom{"y"}}, {Atom{"z"}}, conj(v("z"), conj(v("x"), v("y"))));
    CHECK(qbf2_count_valid_assignments(q) == 0);
    DefaultTheory t = gen_assignment(q);
    CHECK(extensions(t, SemanticsId::Rational, wide).size() == 2);
  }

  SUBCASE("empty free block degenerates") {
    Qbf2 q = qbf({Atom{"x"}}, {Atom{"y"}}, {}, Formula::disjunction(v("x"), v("y")));
    DefaultTheory t = gen_assignment(q);
    CHECK(extensions(t, SemanticsId::Constrained).size() == 2);
  }
}

TEST_CASE("fresh atoms avoid the source alphabet") {
  DefaultTheory tricky({mk(tru(), v("__a"), v("__b"))}, {});
  const TranslatedTheory& out = add_known_extension(tricky).get();
  CHECK(out.fresh.a != Atom{"__a"});
  CHECK_FALSE(tricky.vars().count(*out.fresh.a));

  TranslateOptions opt;
  opt.verify_strongest = false;
  const TranslatedTheory& rc = t_rc(tricky, v("__b"), opt).get();
  AtomSet fresh = rc.fresh.all();
  for (const Atom& atom : fresh) CHECK_FALSE(tricky.vars().count(atom));

  SUBCASE("restricting any target extension to source vars drops fresh atoms") {
    for (const Extension& e : extensions(rc.theory, SemanticsId::Constrained)) {
      Formula projected = forget(generator_formula(e), rc.fresh.all());
      for (const Atom& atom : projected.vars()) CHECK(tricky.vars().count(atom));
    }
  }
}

TEST_CASE("qbf validation") {
  CHECK_THROWS_AS(qbf2_valid(qbf({Atom{"x"}}, {Atom{"x"}}, {}, v("x"))), ContractError);
  CHECK_THROWS_AS(gen_one_or_two(qbf({Atom{"x"}}, {}, {}, v("w"))), ContractError);
}
