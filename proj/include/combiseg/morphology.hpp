#pragma once

#include "combiseg/image.hpp"

namespace combiseg {

/// How rectangular morphology is evaluated.
///
/// SlidingWindow runs two separable 1-D van Herk/Gil-Werman passes and costs
/// O(width * height) regardless of the element size. Naive scans the full
/// window for every pixel; it exists as a baseline for benchmarks.
enum class MorphEngine { SlidingWindow, Naive };

// Window conventions, for an element of width w with anchor ax (same for y):
//   erode:  min over x' in [x - ax, x - ax + w - 1], outside pixels read as 1
//   dilate: max over x' in [x - (w - 1 - ax), x + ax], outside pixels read as 0
// Dilation uses the reflected element, so opening stays anti-extensive and
// idempotent for even sizes as well.
BinaryImage dilate(const BinaryImage& img, StructuringElement e,
                   MorphEngine engine = MorphEngine::SlidingWindow);
BinaryImage erode(const BinaryImage& img, StructuringElement e,
                  MorphEngine engine = MorphEngine::SlidingWindow);

/// Erosion followed by dilation with the same element.
BinaryImage open(const BinaryImage& img, StructuringElement e,
                 MorphEngine engine = MorphEngine::SlidingWindow);

/// Pixelwise min(1, a + b). Throws std::invalid_argument on size mismatch.
BinaryImage add(const BinaryImage& a, const BinaryImage& b);

/// Pixelwise max(0, a - b). Throws std::invalid_argument on size mismatch.
BinaryImage subtract(const BinaryImage& a, const BinaryImage& b);

/// Pixelwise 1 - v.
BinaryImage invert(const BinaryImage& img);

}  // namespace combiseg
