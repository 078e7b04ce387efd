#pragma once

#include <cmath>
#include <json.hpp>
#include <string>
#include <vector>

#include "galab/autolab.hpp"
#include "galab/conv.hpp"
#include "galab/group.hpp"
#include "galab/locality.hpp"
#include "galab/repr.hpp"

namespace galab {

using Json = nlohmann::json;

// Complex numbers are serialized as [re, im] throughout.

inline Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json vector_to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

inline Vec vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of complex values");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

inline Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ParseError("expected matrix rows to be arrays");
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = complex_from_json(j[i][c]);
  }
  return m;
}

// Group spec: {"name": string, "order": n, "table": [[int]]}.

inline Json group_to_json(const FiniteGroup& g) {
  Json table = Json::array();
  for (int x = 0; x < g.order; ++x) {
    Json row = Json::array();
    for (int y = 0; y < g.order; ++y) row.push_back(g.mul(x, y));
    table.push_back(std::move(row));
  }
  return Json{{"name", g.name}, {"order", g.order}, {"table", std::move(table)}};
}

inline FiniteGroup group_from_json(const Json& j) {
  try {
    const std::string name = j.at("name").get<std::string>();
    const int order = j.at("order").get<int>();
    const auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) != order)
      throw ParseError("declared order does not match table size");
    return build_group(name, table);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad group JSON: ") + e.what());
  }
}

// Dual cache: {"group": name, "irreps": [{"dim": d, "matrices": [...]}]}.

inline Json dual_to_json(const DualObject& dual) {
  Json irreps = Json::array();
  for (const Irrep& ir : dual.irreps) {
    Json mats = Json::array();
    for (const Mat& m : ir.matrices) mats.push_back(matrix_to_json(m));
    irreps.push_back(Json{{"dim", ir.dim}, {"matrices", std::move(mats)}});
  }
  return Json{{"group", dual.group.name}, {"irreps", std::move(irreps)}};
}

/// Reader counterpart of dual_to_json; character rows are recomputed. The
/// caller should revalidate with check_dual.
inline DualObject dual_from_json(const Json& j, const FiniteGroup& g) {
  try {
    DualObject dual;
    dual.group = g;
    for (const Json& jir : j.at("irreps")) {
      Irrep ir;
      ir.dim = jir.at("dim").get<int>();
      for (const Json& jm : jir.at("matrices")) ir.matrices.push_back(matrix_from_json(jm));
      if (static_cast<int>(ir.matrices.size()) != g.order)
        throw ParseError("irrep has wrong number of matrices");
      for (const Mat& m : ir.matrices)
        if (m.rows() != ir.dim || m.cols() != ir.dim)
          throw ParseError("irrep matrix shape does not match dim");
      ir.character_row = detail::trace_row(ir.matrices);
      dual.irreps.push_back(std::move(ir));
    }
    return dual;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad dual JSON: ") + e.what());
  }
}

// Algebra element: {"group": name, "values": [[re,im]]}.

inline Json element_to_json(const std::string& group_name, const AlgebraElement& f) {
  return Json{{"group", group_name}, {"values", vector_to_json(f)}};
}

inline AlgebraElement element_from_json(const Json& j) {
  try {
    return vector_from_json(j.at("values"));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad element JSON: ") + e.what());
  }
}

// Block tuple: {"dual": name, "blocks": [matrix]}.

inline Json tuple_to_json(const std::string& dual_name, const BlockTuple& t) {
  Json blocks = Json::array();
  for (const Mat& b : t.blocks) blocks.push_back(matrix_to_json(b));
  return Json{{"dual", dual_name}, {"blocks", std::move(blocks)}};
}

inline BlockTuple tuple_from_json(const Json& j) {
  try {
    BlockTuple t;
    for (const Json& jb : j.at("blocks")) t.blocks.push_back(matrix_from_json(jb));
    return t;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad tuple JSON: ") + e.what());
  }
}

// Block map: {"perm": [int], "flags": [bool], "unitaries": [matrix]}.

inline Json block_map_to_json(const BlockMap& b) {
  Json unis = Json::array();
  for (const Mat& u : b.unitaries) unis.push_back(matrix_to_json(u));
  Json flags = Json::array();
  for (bool f : b.transpose_flags) flags.push_back(f);
  return Json{{"perm", b.block_perm}, {"flags", std::move(flags)}, {"unitaries", std::move(unis)}};
}

inline BlockMap block_map_from_json(const Json& j) {
  try {
    BlockMap b;
    b.block_perm = j.at("perm").get<std::vector<int>>();
    for (const Json& jf : j.at("flags")) b.transpose_flags.push_back(jf.get<bool>());
    for (const Json& ju : j.at("unitaries")) b.unitaries.push_back(matrix_from_json(ju));
    if (b.transpose_flags.size() != b.block_perm.size() ||
        b.unitaries.size() != b.block_perm.size())
      throw ParseError("perm, flags and unitaries must have equal length");
    return b;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad block map JSON: ") + e.what());
  }
}

// Weighted composition:
// {"character": [[re,im]], "motion": [int], "kind": "auto"|"antiauto"}.

inline Json weighted_composition_to_json(const WeightedComposition& w) {
  Json chr = Json::array();
  for (cplx v : w.weight.values()) chr.push_back(complex_to_json(v));
  return Json{{"character", std::move(chr)},
              {"motion", w.motion.perm},
              {"kind", w.motion.kind == MapKind::Automorphism ? "auto" : "antiauto"}};
}

/// Reconstructs the exact character angles against the group exponent and
/// validates unit modulus, multiplicativity, and that the motion is the map
/// its kind claims.
inline WeightedComposition weighted_composition_from_json(const Json& j, const FiniteGroup& g) {
  try {
    const auto vals = j.at("character");
    const auto perm = j.at("motion").get<std::vector<int>>();
    const std::string kind = j.at("kind").get<std::string>();
    if (static_cast<int>(vals.size()) != g.order || static_cast<int>(perm.size()) != g.order)
      throw ParseError("character or motion length does not match group order");

    const int L = exponent(g);
    Character chr;
    chr.modulus = L;
    for (const Json& jv : vals) {
      const cplx v = complex_from_json(jv);
      if (std::abs(std::abs(v) - 1.0) > 1e-9) throw ParseError("character value not unimodular");
      const double turns = std::arg(v) / 6.283185307179586476925286766559;
      int angle = static_cast<int>(std::llround(turns * L));
      angle %= L;
      if (angle < 0) angle += L;
      const double t = 6.283185307179586476925286766559 * angle / L;
      if (std::abs(v - cplx(std::cos(t), std::sin(t))) > 1e-9)
        throw ParseError("character value is not an exponent-order root of unity");
      chr.angles.push_back(angle);
    }
    for (int x = 0; x < g.order; ++x)
      for (int y = 0; y < g.order; ++y)
        if (chr.angles[g.mul(x, y)] != (chr.angles[x] + chr.angles[y]) % L)
          throw ParseError("character is not multiplicative");

    GroupMap motion;
    motion.perm = perm;
    std::vector<bool> seen(g.order, false);
    for (int v : perm) {
      if (v < 0 || v >= g.order || seen[v]) throw ParseError("motion is not a permutation");
      seen[v] = true;
    }
    if (kind == "auto")
      motion.kind = MapKind::Automorphism;
    else if (kind == "antiauto")
      motion.kind = MapKind::Antiautomorphism;
    else
      throw ParseError("kind must be \"auto\" or \"antiauto\"");
    for (int x = 0; x < g.order; ++x)
      for (int y = 0; y < g.order; ++y) {
        const int lhs = perm[g.mul(x, y)];
        const int rhs = motion.kind == MapKind::Automorphism ? g.mul(perm[x], perm[y])
                                                             : g.mul(perm[y], perm[x]);
        if (lhs != rhs) throw ParseError("motion does not satisfy its declared kind");
      }
    return {std::move(chr), std::move(motion)};
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad weighted composition JSON: ") + e.what());
  }
}

inline Json equiv_to_json(const EquivDecision& dec) {
  Json j{{"equivalent", dec.equivalent}};
  if (!dec.equivalent) {
    j["mismatch_word"] = dec.mismatch_word;
    j["trace_a"] = complex_to_json(dec.trace_a);
    j["trace_b"] = complex_to_json(dec.trace_b);
  }
  if (dec.witness) {
    j["witness"] = matrix_to_json(*dec.witness);
    j["witness_residual"] = dec.witness_residual;
  }
  return j;
}

// Verdict report:
// {"map": descriptor, "verdict": "LOCAL_SAMPLED"|"REFUTED", "samples": n,
//  "seed": s, "witness": optional, "obstruction": optional}.

inline Json verdict_to_json(const std::string& map_desc, const L2Verdict& v,
                            const std::string& dual_name) {
  Json j{{"map", map_desc},
         {"verdict", v.refuted ? "REFUTED" : "LOCAL_SAMPLED"},
         {"samples", v.samples},
         {"seed", v.seed}};
  if (v.witness) j["witness"] = tuple_to_json(dual_name, *v.witness);
  if (v.refuted)
    j["obstruction"] = Json{{"dim_class", v.obstruction_dim}, {"word", v.obstruction_word}};
  return j;
}

inline Json verdict_to_json(const std::string& map_desc, const LpVerdict& v,
                            const std::string& group_name) {
  Json j{{"map", map_desc},
         {"verdict", v.refuted ? "REFUTED" : "LOCAL_SAMPLED"},
         {"samples", v.samples},
         {"seed", v.seed}};
  if (v.witness) j["witness"] = element_to_json(group_name, *v.witness);
  return j;
}

}  // namespace galab
