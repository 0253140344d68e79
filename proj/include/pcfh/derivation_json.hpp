#pragma once

#include <string>

#include "pcfh/derivation.hpp"

namespace pcfh {

class JsonError : public std::runtime_error {
 public:
  explicit JsonError(const std::string& msg) : std::runtime_error(msg) {}
};

// Derivation node schema (keys are sorted, multitypes canonicalized, so
// serialization is a stable canonical form):
//   node      = { "rule": string, "judgment": judgment,
//                 "witness": object (rule-specific, omitted when none),
//                 "premises": [node...] }
//   judgment  = { "family": {var: [multitype...]},
//                 "typing": {var: multitype | "bot"},
//                 "counter": {"B":n, "I0":n, "IS":n, "F":n},
//                 "term": string (concrete syntax), "type": multitype }
//   multitype = { "nature": "abs"|"nat", "members": [type-string...] }
std::string derivationToJson(const DerivPtr& d, int indent = 2);

// Rebuilds the tree exactly as written; validity is checkDerivation's
// job, not the reader's.
DerivPtr derivationFromJson(const std::string& text);

}  // namespace pcfh
