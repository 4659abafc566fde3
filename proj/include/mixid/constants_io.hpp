#pragma once

#include <map>
#include <string>

#include "mixid/automorphism.hpp"
#include "mixid/pl_homeo.hpp"

namespace mixid {

// Constant definition file (JSON):
// {
//   "structure": "dlo",
//   "constants": {
//     "c":  {"type": "plq", "breaks": ["0"], "pieces": [["1","0"],["2","0"]]},
//     "b":  {"type": "bump", "from": "0", "to": "1"},
//     "s":  {"type": "shift", "by": "1"},
//     "t":  {"type": "perm", "cycles": [[1,2],[3,4,5]]},
//     "r":  {"type": "rotation", "by": "1/4"},
//     "cb": {"type": "circle-bump", "from": "1/10", "to": "2/10"},
//     "e":  {"type": "ek", "class_cycles": [[0,1]], "class_shift": 0,
//            "default_table": [0,1], "exceptions": {"3": [1,0]}},
//     "g":  {"type": "gl", "lambda": 1,
//            "rows": [{"image": [[0,1]], "functional": [[1,1]]}]},
//     "z":  {"type": "lazy", "salt": 7},
//     "h":  {"type": "pl01", "points": [["0","0"],["1/2","1/4"],["1","1"]]}
//   }
// }
// Rationals are written as "p/q" strings. pl01 entries are homeomorphisms of
// [0,1] for the derivative-bound commands; the others are automorphism
// constants for the named structure.

struct ConstantFile {
  std::string structure;
  std::map<std::string, Aut> constants;
  std::map<std::string, PLHomeo> pl_constants;
};

ConstantFile parse_constant_file(const std::string& json_text, StructureOracle* oracle);
ConstantFile load_constant_file(const std::string& path, StructureOracle* oracle);

}  // namespace mixid
