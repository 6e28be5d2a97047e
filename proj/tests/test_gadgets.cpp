#include <catch2/catch_amalgamated.hpp>

#include "stableflow/gadgets.hpp"
#include "stableflow/oracle.hpp"

namespace sf = stableflow;

namespace {

const sf::matching_pair& pair_rec(const sf::matching_instance& mi, const std::string& man,
                                  const std::string& woman) {
  for (const sf::matching_pair& p : mi.pairs)
    if (p.man == man && p.woman == woman) return p;
  throw std::runtime_error("pair " + man + "-" + woman + " not found");
}

// Literal transcription of weak blocking, kept independent of the library's
// scan so the dominance audits below have their own legs to stand on.
bool literally_blocks(const sf::matching_instance& mi, const sf::matching& m,
                      const std::string& man, const std::string& woman) {
  const sf::matching_pair& p = pair_rec(mi, man, woman);
  if (p.free || m.count({man, woman})) return false;
  for (const auto& [a, b] : m) {
    if (a == man && pair_rec(mi, a, b).man_rank <= p.man_rank) return false;
    if (b == woman && pair_rec(mi, a, b).woman_rank <= p.woman_rank) return false;
  }
  return true;
}

sf::matching_instance degree_two_tie() {
  sf::matching_instance mi;
  mi.men = {"m"};
  mi.women = {"w1", "w2"};
  mi.pairs = {{"m", "w1", 1, 1}, {"m", "w2", 1, 1}};
  mi.ties = {{"m", {"w1", "w2"}}};
  return mi;
}

sf::matching_instance stably_single_tie() {
  // w1 and w2 both hold out for their dedicated suitors, leaving m single in
  // the unique stable matching despite his tie.
  sf::matching_instance mi;
  mi.men = {"m", "m1", "m2"};
  mi.women = {"w1", "w2"};
  mi.pairs = {{"m", "w1", 1, 2}, {"m", "w2", 1, 2}, {"m1", "w1", 1, 1}, {"m2", "w2", 1, 1}};
  mi.ties = {{"m", {"w1", "w2"}}};
  return mi;
}

}  // namespace

TEST_CASE("gadgetizing the tied market reproduces the reference ranks") {
  sf::gadgetized g = sf::gadgetize_ties(sf::build_tied_matching_example());
  REQUIRE(sf::validate_matching(g.inst).ok());
  REQUIRE(g.inst.ties.empty());
  REQUIRE(g.map.gadgets.size() == 1);
  REQUIRE(g.map.cardinality_offset() == 2);

  const sf::tie_gadget& t = g.map.gadgets[0];
  REQUIRE(t.man == "m");
  REQUIRE(t.kept_woman == "w1");
  REQUIRE(t.routed_woman == "w2");
  REQUIRE(t.a == "m_a");
  REQUIRE(t.b == "m_b");
  REQUIRE(t.c == "m_c");
  REQUIRE(t.d == "m_d");

  // The routed pair is gone and m's list is strict from top to bottom.
  REQUIRE_THROWS(pair_rec(g.inst, "m", "w2"));
  REQUIRE(pair_rec(g.inst, "m", "x1").man_rank == 1);
  REQUIRE(pair_rec(g.inst, "m", "x2").man_rank == 2);
  REQUIRE(pair_rec(g.inst, "m", "m_c").man_rank == 3);
  REQUIRE(pair_rec(g.inst, "m", "w1").man_rank == 4);
  REQUIRE(pair_rec(g.inst, "m", "m_a").man_rank == 5);

  // w2's column: the relays take over the deleted slot, m2 shifts down.
  REQUIRE(pair_rec(g.inst, "m3", "w2").woman_rank == 1);
  REQUIRE(pair_rec(g.inst, "m_b", "w2").woman_rank == 2);
  REQUIRE(pair_rec(g.inst, "m_d", "w2").woman_rank == 3);
  REQUIRE(pair_rec(g.inst, "m2", "w2").woman_rank == 4);

  // Relay-internal ranks and the three free pairs.
  REQUIRE(pair_rec(g.inst, "m", "m_a").woman_rank == 1);
  REQUIRE(pair_rec(g.inst, "m_b", "m_a").woman_rank == 2);
  REQUIRE(pair_rec(g.inst, "m_d", "m_c").woman_rank == 1);
  REQUIRE(pair_rec(g.inst, "m", "m_c").woman_rank == 2);
  REQUIRE(pair_rec(g.inst, "m_b", "m_a").man_rank == 1);
  REQUIRE(pair_rec(g.inst, "m_b", "w2").man_rank == 2);
  REQUIRE(pair_rec(g.inst, "m_d", "w2").man_rank == 1);
  REQUIRE(pair_rec(g.inst, "m_d", "m_c").man_rank == 2);

  REQUIRE(pair_rec(g.inst, "m", "m_c").free);
  REQUIRE(pair_rec(g.inst, "m_b", "m_a").free);
  REQUIRE(pair_rec(g.inst, "m_d", "w2").free);
  REQUIRE_FALSE(pair_rec(g.inst, "m", "m_a").free);
  REQUIRE_FALSE(pair_rec(g.inst, "m_d", "m_c").free);
  REQUIRE_FALSE(pair_rec(g.inst, "m_b", "w2").free);
}

TEST_CASE("scenario completions stay stable and add two pairs") {
  struct scenario {
    const char* name;
    sf::matching_instance mi;
    sf::matching original;
  };
  std::vector<scenario> cases = {
      {"tie consumed", degree_two_tie(), {{"m", "w2"}}},
      {"kept woman chosen", degree_two_tie(), {{"m", "w1"}}},
      {"man stably single", stably_single_tie(), {{"m1", "w1"}, {"m2", "w2"}}},
  };

  for (scenario& sc : cases) {
    INFO(sc.name);
    REQUIRE(sf::validate_matching(sc.mi).ok());
    REQUIRE(sf::is_matching_stable(sc.mi, sc.original));

    sf::gadgetized g = sf::gadgetize_ties(sc.mi);
    sf::matching completed = sf::complete_matching_scenarios(g.map, sc.original);
    REQUIRE(completed.size() == sc.original.size() + g.map.cardinality_offset());
    REQUIRE(sf::is_matching_stable(g.inst, completed));

    // Dominance audit: every non-free pair a gadget introduces or re-ranks
    // is individually refuted by the independent blocking transcription.
    const sf::tie_gadget& t = g.map.gadgets[0];
    std::vector<std::pair<std::string, std::string>> audited = {
        {t.man, t.a}, {t.d, t.c}, {t.b, t.routed_woman}, {t.man, t.kept_woman}};
    for (const auto& [man, woman] : audited) {
      INFO("pair " << man << "-" << woman);
      REQUIRE_FALSE(literally_blocks(g.inst, completed, man, woman));
    }

    REQUIRE(sf::ungadgetize_matching(g.map, completed) == sc.original);
  }
}

TEST_CASE("maximum weakly stable size grows by exactly two per tie") {
  sf::matching_instance small = degree_two_tie();
  REQUIRE(sf::max_weakly_stable_size(small, {}) == 1);
  REQUIRE(sf::max_weakly_stable_size(sf::gadgetize_ties(small).inst, {}) == 3);

  sf::matching_instance single = stably_single_tie();
  REQUIRE(sf::max_weakly_stable_size(single, {}) == 2);
  REQUIRE(sf::max_weakly_stable_size(sf::gadgetize_ties(single).inst, {}) == 4);

  sf::matching_instance figure = sf::build_tied_matching_example();
  REQUIRE(sf::max_weakly_stable_size(figure, {}) == 3);
  REQUIRE(sf::max_weakly_stable_size(sf::gadgetize_ties(figure).inst, {}) == 5);
}

TEST_CASE("tie-free instances pass through unchanged") {
  sf::matching_instance mi;
  mi.men = {"m1"};
  mi.women = {"w1"};
  mi.pairs = {{"m1", "w1", 1, 1}};

  sf::gadgetized g = sf::gadgetize_ties(mi);
  REQUIRE(g.map.gadgets.empty());
  REQUIRE(g.map.cardinality_offset() == 0);
  REQUIRE(g.inst.pairs.size() == 1);
  REQUIRE(sf::max_weakly_stable_size(g.inst, {}) == 1);

  sf::matching_instance broken = mi;
  broken.pairs[0].man_rank = 7;
  REQUIRE_THROWS_AS(sf::gadgetize_ties(broken), std::invalid_argument);
}
