#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pstable/fields.hpp"

namespace pstable {

// Generator settings for property-test corpora: superpositions of smooth
// compactly supported bumps whose supports stay strictly inside the domain,
// so every field vanishes on the boundary and on masked-out nodes.
struct CorpusSpec {
  std::uint64_t seed = 1;
  int count = 50;
  std::string kind = "box";  // box | ball | radial
  int d = 3;                 // grid dimension (box / ball)
  int nodes = 48;            // grid nodes per axis, or radial intervals
  int n = 4;                 // ambient dimension stamped on radial fields
};

std::vector<CartesianField> corpus_cartesian(const CorpusSpec& spec);
std::vector<RadialField> corpus_radial(const CorpusSpec& spec);

// Single field from the same stream: equals corpus_cartesian(spec)[index]
// but only samples that one field, so high-resolution sweeps stay within
// memory. The parameter draws for earlier fields are replayed unsampled.
CartesianField corpus_cartesian_at(const CorpusSpec& spec, int index);

// Writes <dir>/corpus_NNN.pfield for each generated field and returns the
// paths in index order. Fixed spec -> byte-identical files.
std::vector<std::string> corpus_generate(const CorpusSpec& spec, const std::string& dir);

}  // namespace pstable
