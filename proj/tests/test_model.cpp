#include <doctest.h>

#include <random>

#include "relnet/model.hpp"

using namespace relnet;

namespace {

RateTuple random_rates(std::mt19937& rng, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  RateTuple r;
  for (int& x : r.v) x = d(rng);
  return r;
}

}  // namespace

TEST_CASE("stream indexing is the fixed lexicographic order") {
  CHECK(stream_index(1, 2) == 0);
  CHECK(stream_index(2, 4) == 5);
  CHECK(stream_index(4, 3) == 11);
  for (int i = 0; i < kStreamCount; ++i) CHECK(stream_index(stream_at(i)) == i);
  CHECK(stream_key(StreamId(3, 1)) == "r31");
  CHECK(StreamId(2, 4).reversed() == StreamId(4, 2));
  CHECK_THROWS_AS(StreamId(2, 2), std::invalid_argument);
}

TEST_CASE("canonicalize sorts gains and permutes rates consistently") {
  RateTuple r;
  r.at(2, 1) = 3;
  Canonicalized c = canonicalize({4, 7, 5, 6}, r);
  CHECK(c.gains.n == std::array<int, 4>{7, 6, 5, 4});
  // Node 2 (gain 7) becomes label 1, node 1 (gain 4) becomes label 4, so the
  // old 2->1 stream is the new 1->4 stream.
  CHECK(c.new_to_old == std::array<int, 4>{2, 4, 3, 1});
  CHECK(c.rates.at(1, 4) == 3);
  CHECK(c.rates.total() == 3);
}

TEST_CASE("already-sorted gains canonicalize to the identity") {
  RateTuple r;
  r.at(1, 3) = 2;
  Canonicalized c = canonicalize({7, 6, 5, 4}, r);
  CHECK(c.is_identity());
  CHECK(c.rates == r);
}

TEST_CASE("equal gains keep the original node order") {
  Canonicalized c = canonicalize({5, 5, 5, 5}, RateTuple());
  CHECK(c.is_identity());
}

TEST_CASE("canonicalize is idempotent and invertible") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> gd(0, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<int, 4> gains{gd(rng), gd(rng), gd(rng), gd(rng)};
    RateTuple r = random_rates(rng, 5);
    Canonicalized once = canonicalize(gains, r);
    Canonicalized twice = canonicalize(once.gains.n, once.rates);
    CHECK(twice.is_identity());
    CHECK(twice.rates == once.rates);
    // Round trip back to the original labels.
    std::array<int, 4> inv{};
    for (int a = 1; a <= 4; ++a) inv[static_cast<size_t>(once.old_to_new[a - 1] - 1)] = a;
    CHECK(inv == once.new_to_old);
    RateTuple back = permute_rates(once.rates, once.old_to_new);
    CHECK(back == r);
  }
}

TEST_CASE("negative inputs are rejected") {
  RateTuple r;
  r.v[0] = -1;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize({1, 2, 3, -1}, RateTuple()), std::invalid_argument);
  CHECK_THROWS_AS(GainVector({4, 5, 6, 7}), std::invalid_argument);
}
