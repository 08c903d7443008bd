#pragma once

#include <string>

#include "ffk/character.hpp"
#include "ffk/counting.hpp"
#include "ffk/report.hpp"

namespace ffk::detail {

inline Params base_params(const CharContext& ctx) {
  return {{"field", ctx.field().to_string()}, {"F", ctx.ring().format(ctx.modulus().poly())}};
}

inline void add_poly(Params& p, const CharContext& ctx, const std::string& key, const Poly& x) {
  p.emplace_back(key, ctx.ring().format(x));
}

inline void add_interval(Params& p, const CharContext& ctx, const std::string& key, const Interval& I) {
  p.emplace_back(key, std::to_string(I.size_exp));
  if (!I.is_initial()) p.emplace_back(key + "_offset", ctx.ring().format(I.offset));
}

}  // namespace ffk::detail
