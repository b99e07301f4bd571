#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "suppkit/error.hpp"
#include "suppkit/fock.hpp"

using namespace suppkit;

namespace {

BinaryMatrix rows3(std::vector<BinaryMatrix::Row> rows) { return BinaryMatrix(std::move(rows), 3); }

const BinaryMatrix kExample2 = rows3({0b000, 0b001, 0b010, 0b011});

}  // namespace

TEST_CASE("occupation and mode-assignment conversions") {
  const OccupationState s{1, 1, 1, 0, 0, 0, 0, 1};
  CHECK(s.photons() == 4);
  CHECK(s.modes() == 8);
  CHECK(s[8] == 1);
  CHECK(occupation_to_mal(s) == ModeAssignmentList{1, 2, 3, 8});
  CHECK(mal_to_occupation({1, 2, 3, 8}, 8) == s);
  CHECK(occupation_to_mal(OccupationState{2, 0, 1}) == ModeAssignmentList{1, 1, 3});
  CHECK(ModeAssignmentList{3, 1, 2} == ModeAssignmentList{1, 2, 3});
  CHECK(OccupationState::vacuum(4).photons() == 0);
  CHECK(occupation_to_mal(OccupationState::vacuum(4)).empty());
  CHECK_FALSE(OccupationState{2, 0}.collision_free());
  CHECK(s.to_string() == "[1,1,1,0,0,0,0,1]");
}

TEST_CASE("invalid states are rejected") {
  CHECK_THROWS_AS(OccupationState({1, -1}), Error);
  CHECK_THROWS_AS(ModeAssignmentList({0, 1}), Error);
  CHECK_THROWS_AS(mal_to_occupation({1, 9}, 8), Error);
  CHECK_THROWS_AS(mal_to_binary({1, 2}, 6), Error);
  CHECK_THROWS_AS(count_states(5, 4, true), Error);
  CHECK_THROWS_AS(parse_state("[1,0]", 3), Error);
  CHECK_THROWS_AS(parse_state("1,x", 3), Error);
}

TEST_CASE("binary encoding examples") {
  CHECK(mal_to_binary({1, 2, 3, 8}, 8) == rows3({0b000, 0b001, 0b010, 0b111}));
  CHECK(mal_to_binary({1, 2, 3, 4}, 8) == kExample2);
  CHECK(mal_to_binary({1}, 2) == BinaryMatrix({0}, 1));
  CHECK(binary_to_mal(rows3({0b000, 0b001, 0b010, 0b111})) == ModeAssignmentList{1, 2, 3, 8});
  CHECK(binary_to_mal(rows3({0b111, 0b000, 0b010, 0b001})) == ModeAssignmentList{1, 2, 3, 8});
  CHECK(binary_to_mal(BinaryMatrix({0, 0}, 1)) == ModeAssignmentList{1, 1});
  const auto bm = mal_to_binary({1, 2, 3, 8}, 8);
  CHECK(bm.bit(3, 1) == 1);
  CHECK(bm.bit(1, 1) == 0);
  CHECK(bm.bit(1, 3) == 1);
  CHECK(bm.to_string() == "(000,001,010,111)");
}

TEST_CASE("canonical form and column negation") {
  CHECK(canonical_form(BinaryMatrix({0b111, 0b000}, 3)) == BinaryMatrix({0b000, 0b111}, 3));
  CHECK(canonical_form(kExample2) == kExample2);
  CHECK(negate_columns(kExample2, {1}) == rows3({0b100, 0b101, 0b110, 0b111}));
  CHECK(negate_columns(kExample2, {1, 3}) == rows3({0b101, 0b100, 0b111, 0b110}));
  CHECK(negate_columns(kExample2, {}) == kExample2);
  CHECK(canonical_form(negate_columns(kExample2, {2})) == kExample2);
  CHECK_THROWS_AS(negate_columns(kExample2, {4}), Error);
  CHECK_THROWS_AS(negate_columns(kExample2, {0}), Error);
}

TEST_CASE("canonical form is idempotent and ignores row order") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BinaryMatrix::Row> rows(5);
    for (auto& r : rows) r = rng() % 16;
    const BinaryMatrix bm(rows, 4);
    const auto c = canonical_form(bm);
    CHECK(canonical_form(c) == c);
    std::shuffle(rows.begin(), rows.end(), rng);
    CHECK(canonical_form(BinaryMatrix(rows, 4)) == c);
  }
}

TEST_CASE("negation is an involution and composes over disjoint sets") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BinaryMatrix::Row> rows(4);
    for (auto& r : rows) r = rng() % 16;
    const BinaryMatrix bm(rows, 4);
    std::vector<int> a, b;
    for (int c = 1; c <= 4; ++c) {
      const auto pick = rng() % 3;
      if (pick == 1) a.push_back(c);
      if (pick == 2) b.push_back(c);
    }
    CHECK(negate_columns(negate_columns(bm, a), a) == bm);
    std::vector<int> both(a);
    both.insert(both.end(), b.begin(), b.end());
    CHECK(negate_columns(bm, both) == negate_columns(negate_columns(bm, a), b));
  }
}

TEST_CASE("state counts") {
  CHECK(count_states(2, 4, true) == 6);
  CHECK(count_states(4, 8, true) == 70);
  CHECK(count_states(2, 4, false) == 10);
  CHECK(count_states(8, 16, false) == 490314);
  CHECK(count_states(2, 8, true) == 28);
  CHECK(count_states(0, 5, true) == 1);
  CHECK(count_states(0, 5, false) == 1);
  CHECK(binomial(23, 8) == 490314);
}

TEST_CASE("enumeration matches counts, order and an independent listing") {
  for (int m : {1, 2, 3, 4, 8}) {
    for (int n = 0; n <= 4; ++n) {
      for (bool cf : {false, true}) {
        if (cf && n > m) continue;
        const auto mals = enumerate_mals(n, m, cf);
        CHECK(mals.size() == count_states(n, m, cf));
        CHECK(std::is_sorted(mals.begin(), mals.end()));
        CHECK(std::set<ModeAssignmentList>(mals.begin(), mals.end()).size() == mals.size());
        const auto ref = oracle::tuples(n, m, cf);
        REQUIRE(ref.size() == mals.size());
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(mals[i].modes() == ref[i]);
        const auto states = enumerate_states(n, m, cf);
        CHECK(states.size() == mals.size());
      }
    }
  }
}

TEST_CASE("encodings round trip for every state up to n = 4, m = 16") {
  for (int m : {2, 4, 8, 16}) {
    for (int n = 0; n <= 4; ++n) {
      for_each_mal(n, m, false, [&](std::span<const int> modes) {
        const ModeAssignmentList mal(std::vector<int>(modes.begin(), modes.end()));
        const auto occ = mal_to_occupation(mal, m);
        CHECK(occupation_to_mal(occ) == mal);
        CHECK(binary_to_mal(mal_to_binary(mal, m)) == mal);
      });
    }
  }
}

TEST_CASE("state text syntax") {
  CHECK(parse_mal("1,2,3,8", 8) == ModeAssignmentList{1, 2, 3, 8});
  CHECK(parse_mal("[1,1,1,0,0,0,0,1]", 8) == ModeAssignmentList{1, 2, 3, 8});
  CHECK(parse_state(" 3,1 ", 4) == OccupationState{1, 0, 1, 0});
  CHECK(ModeAssignmentList{1, 2}.to_string() == "(1,2)");
}
