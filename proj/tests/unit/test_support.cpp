#include <gtest/gtest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>

#include "epstein/cyclotomic.hpp"
#include "epstein/parallel.hpp"

using namespace epstein;

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<std::int64_t>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, RootsSumToZero) {
  for (std::int64_t n : {2, 3, 4, 6, 9, 12}) {
    CyclotomicInt sum(n);
    for (std::int64_t k = 0; k < n; ++k) sum.add(RootOfUnity(k, n));
    EXPECT_TRUE(sum.is_zero()) << n;
    CyclotomicInt one(n);
    one.add(RootOfUnity(0, 1), 3);
    EXPECT_TRUE(one.equals_integer(3));
    EXPECT_FALSE(one.is_zero());
  }
  const RootOfUnity z(1, 6);
  EXPECT_EQ(z.pow(6), RootOfUnity(0, 1));
  EXPECT_EQ(z * z.conj(), RootOfUnity(0, 1));
  EXPECT_EQ(RootOfUnity(2, 4), RootOfUnity(1, 2));
  EXPECT_EQ(RootOfUnity(1, 4).value(), std::complex<double>(0.0, 1.0));
}

TEST(Parallel, CoversEveryIndexOnce) {
  const int saved = thread_count();
  for (int threads : {1, 3, 8}) {
    set_thread_count(threads);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                   if (i == 57) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
  }
  set_thread_count(saved);
}

TEST(Parallel, PairwiseSum) {
  std::vector<double> x(1001);
  std::iota(x.begin(), x.end(), 0.0);
  EXPECT_EQ(pairwise_sum(x), 500500.0);
  EXPECT_EQ(pairwise_sum(nullptr, 0), 0.0);
}
