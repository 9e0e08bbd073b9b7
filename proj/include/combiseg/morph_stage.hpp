#pragma once

#include "combiseg/image.hpp"
#include "combiseg/morphology.hpp"
#include "combiseg/params.hpp"

namespace combiseg {

/// Removes long straight strokes (rules, frame borders) from a text block:
/// ib - (open(ib, 1 x size) + open(ib, size x 1)). Runs shorter than `size`
/// in both directions are untouched.
BinaryImage preprocess(const BinaryImage& ib, int size,
                       MorphEngine engine = MorphEngine::SlidingWindow);

/// Intermediate images of the morphology stage, kept for inspection.
struct MorphStages {
  BinaryImage preprocessed;      // rules removed
  BinaryImage joined_inverted;   // after horizontal text dilation, inverted
  BinaryImage separators;        // background separators S
  BinaryImage result;            // candidate line components
};

MorphStages morph_stages(const BinaryImage& ib, const Params& params,
                         MorphEngine engine = MorphEngine::SlidingWindow);

/// Turns a binarized block into an image whose 4-connected components are
/// candidate text lines. Output has the input's dimensions.
BinaryImage morph(const BinaryImage& ib, const Params& params,
                  MorphEngine engine = MorphEngine::SlidingWindow);

}  // namespace combiseg
