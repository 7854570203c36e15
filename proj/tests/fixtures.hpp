#pragma once

#include "relnet/model.hpp"

// Shared fixtures: the two worked examples at gains (7,6,5,4) and their
// equivalent networks after the detour.

namespace fixtures {

inline relnet::GainVector gains7654() { return relnet::GainVector({7, 6, 5, 4}); }

inline relnet::RateTuple example1() {
  return relnet::RateTuple(std::array<int, 12>{2, 0, 0, 0, 0, 2, 1, 1, 1, 1, 0, 0});
}
inline relnet::RateTuple example1_equivalent() {
  return relnet::RateTuple(std::array<int, 12>{2, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0, 0});
}

inline relnet::RateTuple example2() {
  return relnet::RateTuple(std::array<int, 12>{0, 0, 2, 1, 0, 1, 1, 2, 0, 0, 0, 2});
}
inline relnet::RateTuple example2_equivalent() {
  return relnet::RateTuple(std::array<int, 12>{0, 1, 2, 1, 1, 1, 1, 2, 0, 1, 1, 0});
}

}  // namespace fixtures
