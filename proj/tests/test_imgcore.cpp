#include <random>

#include "doctest.h"

#include "combiseg/morphology.hpp"
#include "combiseg/simd/kernels.hpp"
#include "support/oracles.hpp"

using namespace combiseg;

namespace {

bool is_binary(const BinaryImage& img) {
  for (auto v : img.pixels())
    if (v > 1) return false;
  return true;
}

bool subset(const BinaryImage& a, const BinaryImage& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.pixels()[i] && !b.pixels()[i]) return false;
  return true;
}

BinaryImage single(int w, int h, int y, int x) {
  BinaryImage img(w, h);
  img.set(y, x, true);
  return img;
}

}  // namespace

TEST_SUITE("imgcore") {
  TEST_CASE("image container basics") {
    BinaryImage img(4, 3);
    CHECK(img.width() == 4);
    CHECK(img.height() == 3);
    CHECK(img.count() == 0);
    img.fill_rect(1, 1, 10, 10);
    CHECK(img.count() == 6);
    CHECK(img(1, 1) == 1);
    CHECK(img(0, 1) == 0);
    CHECK_THROWS_AS(BinaryImage(-1, 2), std::invalid_argument);
    CHECK_THROWS_AS(StructuringElement(0, 3), std::invalid_argument);
    CHECK(StructuringElement(90, 1).anchor_x() == 44);
    CHECK(StructuringElement(1, 25).anchor_y() == 12);
  }

  TEST_CASE("dilate examples") {
    CHECK(dilate(BinaryImage(10, 10), {3, 1}) == BinaryImage(10, 10));

    BinaryImage expected(11, 11);
    expected.set(5, 4, true);
    expected.set(5, 5, true);
    expected.set(5, 6, true);
    CHECK(dilate(single(11, 11, 5, 5), {3, 1}) == expected);

    std::mt19937 rng(1);
    const BinaryImage img = oracle::random_image(rng, 17, 9, 0.4);
    CHECK(dilate(img, {1, 1}) == img);
  }

  TEST_CASE("erode examples") {
    CHECK(erode(BinaryImage(10, 10, 1), {5, 1}) == BinaryImage(10, 10, 1));

    BinaryImage bar(10, 10), trimmed(10, 10);
    bar.fill_rect(2, 4, 7, 4);
    trimmed.fill_rect(3, 4, 6, 4);
    CHECK(erode(bar, {3, 1}) == trimmed);

    std::mt19937 rng(2);
    const BinaryImage img = oracle::random_image(rng, 13, 21, 0.5);
    CHECK(erode(img, {1, 1}) == img);
  }

  TEST_CASE("open examples") {
    CHECK(open(single(9, 9, 4, 4), {1, 3}) == BinaryImage(9, 9));

    BinaryImage bar(5, 30);
    bar.fill_rect(2, 5, 2, 24);
    CHECK(open(bar, {1, 10}) == bar);

    std::mt19937 rng(3);
    const BinaryImage img = oracle::random_image(rng, 11, 11, 0.5);
    CHECK(open(img, {1, 1}) == img);
  }

  TEST_CASE("add, subtract and invert examples") {
    std::mt19937 rng(4);
    const BinaryImage a = oracle::random_image(rng, 8, 6, 0.5);
    const BinaryImage zeros(8, 6), ones(8, 6, 1);

    CHECK(add(a, zeros) == a);
    CHECK(add(ones, ones) == ones);
    BinaryImage both(4, 4);
    both.set(1, 1, true);
    both.set(2, 2, true);
    CHECK(add(single(4, 4, 1, 1), single(4, 4, 2, 2)) == both);

    CHECK(subtract(a, zeros) == a);
    CHECK(subtract(a, a) == zeros);
    CHECK(subtract(zeros, ones) == zeros);

    CHECK(invert(zeros) == ones);
    CHECK(invert(invert(a)) == a);
    const BinaryImage board = oracle::from_ascii({"#.#.", ".#.#", "#.#."});
    CHECK(invert(board) == oracle::from_ascii({".#.#", "#.#.", ".#.#"}));

    CHECK_THROWS_AS(add(a, BinaryImage(6, 8)), std::invalid_argument);
    CHECK_THROWS_AS(subtract(a, BinaryImage(8, 7)), std::invalid_argument);
  }

  TEST_CASE("operations leave their input untouched") {
    std::mt19937 rng(5);
    const BinaryImage img = oracle::random_image(rng, 20, 20, 0.3);
    BinaryImage copy = img;
    (void)dilate(copy, {5, 3});
    (void)erode(copy, {4, 4});
    (void)open(copy, {2, 7});
    (void)invert(copy);
    CHECK(copy == img);
  }

  TEST_CASE("sliding window and naive engines agree with the oracle") {
    std::mt19937 rng(6);
    for (int iter = 0; iter < 300; ++iter) {
      const int w = oracle::uniform(rng, 1, 40), h = oracle::uniform(rng, 1, 40);
      const BinaryImage img = oracle::random_image(rng, w, h, iter % 3 ? 0.3 : 0.8);
      const StructuringElement e(oracle::uniform(rng, 1, 12), oracle::uniform(rng, 1, 12));
      const BinaryImage d = oracle::dilate(img, e), er = oracle::erode(img, e);
      const BinaryImage o = oracle::open(img, e);
      for (MorphEngine engine : {MorphEngine::SlidingWindow, MorphEngine::Naive}) {
        CHECK(dilate(img, e, engine) == d);
        CHECK(erode(img, e, engine) == er);
        CHECK(open(img, e, engine) == o);
      }
    }
  }

  TEST_CASE("elements larger than the image") {
    BinaryImage img(5, 4);
    img.set(2, 3, true);
    const StructuringElement e{330, 1};
    CHECK(dilate(img, e) == oracle::dilate(img, e));
    CHECK(erode(BinaryImage(5, 4, 1), {100, 100}) == BinaryImage(5, 4, 1));
    CHECK(open(img, {1, 100}) == BinaryImage(5, 4));
  }

  TEST_CASE("zero-sized images pass through") {
    const BinaryImage empty(0, 0);
    CHECK(dilate(empty, {3, 3}).empty());
    CHECK(erode(empty, {3, 3}).empty());
    CHECK(invert(empty).empty());
  }

  TEST_CASE("algebraic properties on random images") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
      const int w = oracle::uniform(rng, 1, 48), h = oracle::uniform(rng, 1, 48);
      const BinaryImage img = oracle::random_blocky(rng, w, h);
      const int ew = oracle::uniform(rng, 1, 9), eh = oracle::uniform(rng, 1, 9);
      const StructuringElement e(ew, eh);

      const BinaryImage d = dilate(img, e), o = open(img, e), er = erode(img, e);
      CHECK(is_binary(d));
      CHECK(is_binary(o));
      CHECK(is_binary(er));
      CHECK(subset(img, d));
      CHECK(subset(o, img));
      CHECK(subset(er, img));
      CHECK(open(o, e) == o);
      CHECK(d == dilate(dilate(img, {ew, 1}), {1, eh}));
      CHECK(er == erode(erode(img, {ew, 1}), {1, eh}));

      const BinaryImage other = oracle::random_image(rng, w, h, 0.3);
      const BinaryImage sum = add(img, other), diff = subtract(img, other);
      CHECK(is_binary(sum));
      CHECK(is_binary(diff));
      CHECK(subset(img, sum));
      CHECK(subset(diff, img));
      CHECK(add(diff, other) == sum);
    }
  }
}

TEST_SUITE("simd") {
  TEST_CASE("scalar backend is always available and listed first") {
    const auto all = simd::available();
    REQUIRE(!all.empty());
    CHECK(all.front()->backend == simd::Backend::Scalar);
    CHECK(simd::name(simd::Backend::Avx2) == "avx2");
  }

  TEST_CASE("every backend matches the scalar kernels") {
    const simd::Kernels& ref = simd::scalar_kernels();
    std::mt19937 rng(8);
    for (const simd::Kernels* k : simd::available()) {
      CAPTURE(simd::name(k->backend));
      for (std::size_t n : {0u, 1u, 15u, 16u, 17u, 31u, 32u, 33u, 63u, 64u, 65u, 100u, 1000u, 4099u}) {
        std::vector<std::uint8_t> a(n), b(n), bits(n), x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
          a[i] = static_cast<std::uint8_t>(rng());
          b[i] = static_cast<std::uint8_t>(rng());
          bits[i] = rng() & 1;
        }
        ref.max_u8(a.data(), b.data(), x.data(), n);
        k->max_u8(a.data(), b.data(), y.data(), n);
        CHECK(x == y);
        ref.min_u8(a.data(), b.data(), x.data(), n);
        k->min_u8(a.data(), b.data(), y.data(), n);
        CHECK(x == y);
        ref.sub_sat_u8(a.data(), b.data(), x.data(), n);
        k->sub_sat_u8(a.data(), b.data(), y.data(), n);
        CHECK(x == y);
        ref.invert_binary(bits.data(), x.data(), n);
        k->invert_binary(bits.data(), y.data(), n);
        CHECK(x == y);
        CHECK(ref.sum(a.data(), n) == k->sum(a.data(), n));
      }
    }
  }

  TEST_CASE("morphology is identical under every backend") {
    std::mt19937 rng(9);
    std::vector<BinaryImage> images;
    std::vector<StructuringElement> elements;
    for (int i = 0; i < 40; ++i) {
      images.push_back(oracle::random_blocky(rng, oracle::uniform(rng, 1, 90), oracle::uniform(rng, 1, 90)));
      elements.emplace_back(oracle::uniform(rng, 1, 40), oracle::uniform(rng, 1, 40));
    }
    const simd::Backend original = simd::active().backend;
    REQUIRE(simd::set_active(simd::Backend::Scalar));
    std::vector<BinaryImage> expected;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const BinaryImage o = open(images[i], elements[i]);
      expected.push_back(subtract(add(dilate(images[i], elements[i]), o), invert(erode(images[i], elements[i]))));
    }
    for (const simd::Kernels* k : simd::available()) {
      CAPTURE(simd::name(k->backend));
      REQUIRE(simd::set_active(k->backend));
      for (std::size_t i = 0; i < images.size(); ++i) {
        const BinaryImage o = open(images[i], elements[i]);
        CHECK(subtract(add(dilate(images[i], elements[i]), o), invert(erode(images[i], elements[i]))) ==
              expected[i]);
        CHECK(images[i].count() == static_cast<std::size_t>(std::count(images[i].pixels().begin(), images[i].pixels().end(), 1)));
      }
    }
    simd::set_active(original);
  }
}
