#include "combiseg/morph_stage.hpp"

namespace combiseg {

BinaryImage preprocess(const BinaryImage& ib, int size, MorphEngine engine) {
  const BinaryImage vertical = open(ib, StructuringElement(1, size), engine);
  const BinaryImage horizontal = open(ib, StructuringElement(size, 1), engine);
  return subtract(ib, add(vertical, horizontal));
}

MorphStages morph_stages(const BinaryImage& ib, const Params& params, MorphEngine engine) {
  params.validate();
  MorphStages s;
  s.preprocessed = preprocess(ib, params.preprocess_size, engine);

  // Join characters of one line into a single blob, then work on the background.
  s.joined_inverted =
      invert(dilate(s.preprocessed, StructuringElement(params.text_dilation, 1), engine));

  // Drop tall background columns first, so separators are only sought in the
  // thin strips between lines, then widen the surviving horizontal strips.
  const BinaryImage& background = s.joined_inverted;
  const BinaryImage thin =
      subtract(background, open(background, StructuringElement(1, params.protection_height), engine));
  const BinaryImage strips = open(thin, StructuringElement(params.separator_width, 1), engine);
  s.separators = dilate(strips, StructuringElement(params.separator_dilation, 1), engine);

  s.result = invert(add(background, s.separators));
  return s;
}

BinaryImage morph(const BinaryImage& ib, const Params& params, MorphEngine engine) {
  return morph_stages(ib, params, engine).result;
}

}  // namespace combiseg
