#pragma once

#include "ttcube/graph_map.hpp"

#include <string>
#include <vector>

namespace ttc {

/// Cell census of the mapping torus of the L-th iterate: vertices and
/// vertical edges from the graph, one directed horizontal edge per vertex,
/// one 2-cell per vertical edge with attaching word
/// t_b^-1 e^-1 t_a (image of e under the L-th iterate).
struct TorusComplex {
  int power = 1;

  struct Token {
    bool horizontal = false;
    std::uint32_t id = 0; // EdgeId or VertexId (for t_w)
    bool inverse = false;
  };

  std::vector<std::string> cells0;     // vertex names
  std::vector<std::string> vertical1;  // edge names
  std::vector<std::string> horizontal1; // "t_<vertex>" names
  struct TwoCell {
    EdgeId edge = 0;
    std::vector<Token> word;
  };
  std::vector<TwoCell> cells2;
};

TorusComplex build_torus(const GraphMap &m, int L);

/// |cells0| - (|vertical1| + |horizontal1|) + |cells2|; zero for every
/// honest census.
long euler_characteristic(const TorusComplex &tc);

std::string token_str(const GraphMap &m, const TorusComplex::Token &t);

/// Presentation of the fundamental group of the mapping torus of the L-th
/// iterate: free basis from a spanning tree plus the stable letter z, one
/// relation z x z^-1 = (induced endomorphism)(x) per basis element.
struct Presentation {
  struct Letter {
    std::string generator;
    int exponent = 1; // +1 or -1
  };
  struct Relation {
    std::string generator;       // basis element x
    std::vector<Letter> image;   // word for z x z^-1
  };
  std::vector<std::string> generators; // basis names then "z"
  std::vector<Relation> relations;
};

Presentation presentation(const GraphMap &m, int power = 1);

std::string presentation_text(const Presentation &p);

} // namespace ttc
