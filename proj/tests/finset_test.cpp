#include "cptforge/error.hpp"
#include "cptforge/finset.hpp"
#include "doctest.h"

using namespace cptforge;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInput;
}

}  // namespace

TEST_CASE("ms_map marginalises the blood/medicine table") {
  const Multiset phi{10, 35, 25, 5, 10, 15};
  CHECK(ms_map(FinMap::first_projection(2, 3), phi) == Multiset{70, 30});
  CHECK(ms_map(FinMap::second_projection(2, 3), phi) == Multiset{15, 45, 40});
  CHECK(ms_map(FinMap::identity(6), phi) == phi);
}

TEST_CASE("ms_map on empty and sparse multisets") {
  CHECK(ms_map(FinMap({0, 0, 1}, 3), Multiset::zeros(3)) == Multiset::zeros(3));
  CHECK(ms_map(FinMap({2, 2}, 3), Multiset{1, 4}) == Multiset{0, 0, 5});
  CHECK(kind_of([] { ms_map(FinMap({0, 1}, 2), Multiset{1, 2, 3}); }) == ErrorKind::kDimensionMismatch);
}

TEST_CASE("ms_map_full stays inside full support") {
  CHECK(ms_map_full(FinMap({0, 0, 1}, 2), Multiset{1, 2, 3}) == Multiset{3, 3});
  CHECK(ms_map_full(FinMap::identity(2), Multiset{1, 1}) == Multiset{1, 1});
  CHECK(ms_map_full(FinMap::constant(2), Multiset{2, 5}) == Multiset{7});
  CHECK(kind_of([] { ms_map_full(FinMap({0, 0}, 2), Multiset{1, 1}); }) == ErrorKind::kNotSurjective);
  CHECK(kind_of([] { ms_map_full(FinMap::identity(2), Multiset{0, 1}); }) == ErrorKind::kNotFullSupport);
}

TEST_CASE("FinMap validation and composition") {
  CHECK(kind_of([] { FinMap({0, 3}, 3); }) == ErrorKind::kInvalidArgument);
  const FinMap h({1, 0, 1}, 2), g({2, 0}, 3);
  CHECK(g.after(h) == FinMap({0, 2, 0}, 3));
  CHECK(h.is_surjective());
  CHECK_FALSE(g.is_surjective());
  CHECK(FinMap::first_projection(2, 3) == FinMap({0, 0, 0, 1, 1, 1}, 2));
  CHECK(FinMap::second_projection(2, 3) == FinMap({0, 1, 2, 0, 1, 2}, 3));
}

TEST_CASE("multiset construction") {
  CHECK(kind_of([] { Multiset{1, -1}; }) == ErrorKind::kInvalidArgument);
  CHECK(Multiset{3, 4}.total() == 7);
  CHECK_FALSE(Multiset::zeros(4).is_nonempty());
  CHECK(Multiset{1, 2}.is_full_support());
  CHECK_FALSE(Multiset{0, 2}.is_full_support());
}

TEST_CASE("row_extract slices a row-positive table") {
  const JointMultiset phi(2, 3, {10, 35, 25, 5, 10, 15});
  const auto rows = row_extract(phi);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == Multiset{10, 35, 25});
  CHECK(rows[1] == Multiset{5, 10, 15});
  CHECK(phi.row_total(0) == 70);

  const JointMultiset single(1, 3, {1, 0, 2});
  CHECK(row_extract(single)[0] == single.flat());

  const JointMultiset table(3, 2, {1, 2, 0, 4, 5, 0});
  const Multiset totals = ms_map(FinMap::first_projection(3, 2), table.flat());
  const auto split = row_extract(table);
  for (std::size_t i = 0; i < 3; ++i) CHECK(split[i].total() == totals[i]);
}

TEST_CASE("row_extract rejects an empty row") {
  const JointMultiset phi(2, 2, {1, 2, 0, 0});
  CHECK_FALSE(phi.is_row_positive());
  try {
    row_extract(phi);
    FAIL("expected kZeroRow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kZeroRow);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
  CHECK(kind_of([] { JointMultiset(2, 2, {1, 2, 3}); }) == ErrorKind::kDimensionMismatch);
}

TEST_CASE("ms_tensor multiplies counts") {
  CHECK(ms_tensor(Multiset{2, 3}, Multiset{1, 1}) == JointMultiset(2, 2, {2, 2, 3, 3}));
  CHECK(ms_tensor(Multiset{4, 5, 6}, Multiset{1}) == JointMultiset(3, 1, {4, 5, 6}));
  CHECK(ms_tensor(Multiset{0, 1}, Multiset{4, 0}) == JointMultiset(2, 2, {0, 0, 4, 0}));
}
