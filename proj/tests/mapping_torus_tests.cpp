#include <doctest.h>

#include "fixtures.hpp"

#include "ttcube/mapping_torus.hpp"
#include "ttcube/perron.hpp"

using namespace ttc;
using namespace ttc_test;

namespace {

std::string word_str(const GraphMap &m, const TorusComplex::TwoCell &cell) {
  std::string out;
  for (const auto &t : cell.word) {
    if (!out.empty())
      out += " ";
    out += token_str(m, t);
  }
  return out;
}

// Signed abelianized image matrix of the induced endomorphism, rows and
// columns indexed by the rose's edges.
std::vector<std::vector<long>> abelianized(const Presentation &p,
                                           const std::vector<std::string> &basis) {
  std::vector<std::vector<long>> mat(basis.size(),
                                     std::vector<long>(basis.size(), 0));
  for (const auto &rel : p.relations) {
    std::size_t row = 0;
    while (basis[row] != rel.generator)
      ++row;
    for (const auto &letter : rel.image) {
      std::size_t col = 0;
      while (basis[col] != letter.generator)
        ++col;
      mat[row][col] += letter.exponent;
    }
  }
  return mat;
}

} // namespace

TEST_CASE("golden torus at power one") {
  GraphMap m = golden_map();
  TorusComplex tc = build_torus(m, 1);
  CHECK(tc.cells0 == std::vector<std::string>{"v"});
  CHECK(tc.vertical1 == std::vector<std::string>{"a", "b"});
  CHECK(tc.horizontal1 == std::vector<std::string>{"t_v"});
  REQUIRE(tc.cells2.size() == 2);
  CHECK(word_str(m, tc.cells2[0]) == "t_v^-1 a^-1 t_v b");
  CHECK(word_str(m, tc.cells2[1]) == "t_v^-1 b^-1 t_v b a");
  CHECK(euler_characteristic(tc) == 0);
}

TEST_CASE("attaching words close up") {
  for (const GraphMap &m : {golden_map(), tribonacci_map(), folding_map()}) {
    for (int L : {1, 2, 3}) {
      TorusComplex tc = build_torus(m, L);
      CHECK(euler_characteristic(tc) == 0);
      for (const auto &cell : tc.cells2) {
        // Substituting the vertical tokens' endpoints and horizontal
        // jumps must return to the starting vertex.
        VertexId at = m.vertex_image[m.graph.edge(cell.edge).term];
        // Walk the word t_b^-1 e^-1 t_a image...
        for (const auto &tok : cell.word) {
          if (tok.horizontal) {
            VertexId w = tok.id;
            // t_w runs from w to the image of w under the L-th iterate.
            VertexId img = w;
            for (int i = 0; i < L; ++i)
              img = m.vertex_image[img];
            if (tok.inverse) {
              CHECK(at == img);
              at = w;
            } else {
              CHECK(at == w);
              at = img;
            }
          } else {
            DirectedEdge d{tok.id, !tok.inverse};
            CHECK(at == src(m.graph, d));
            at = dst(m.graph, d);
          }
        }
        CHECK(at == m.vertex_image[m.graph.edge(cell.edge).term]);
      }
    }
  }
}

TEST_CASE("two-cell boundary growth follows matrix row sums") {
  GraphMap m = tribonacci_map();
  TransitionMatrix M = transition_matrix(m);
  TorusComplex t1 = build_torus(m, 1);
  TorusComplex t2 = build_torus(m, 2);
  // Squared-matrix row sums give the length of the deeper attaching words.
  for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
    std::uint64_t row2 = 0;
    for (std::size_t l = 0; l < M.n; ++l)
      for (std::size_t j = 0; j < M.n; ++j)
        row2 += M.entries[e][l] * M.entries[l][j];
    CHECK(t2.cells2[e].word.size() - t1.cells2[e].word.size() ==
          row2 - M.row_sum(e));
  }
}

TEST_CASE("a corrupted census has nonzero characteristic") {
  TorusComplex tc = build_torus(golden_map(), 1);
  tc.vertical1.pop_back();
  CHECK(euler_characteristic(tc) != 0);
}

TEST_CASE("golden presentation") {
  Presentation p = presentation(golden_map());
  CHECK(p.generators == std::vector<std::string>{"a", "b", "z"});
  REQUIRE(p.relations.size() == 2);
  CHECK(p.relations[0].generator == "a");
  REQUIRE(p.relations[0].image.size() == 1);
  CHECK(p.relations[0].image[0].generator == "b");
  CHECK(p.relations[0].image[0].exponent == 1);
  CHECK(p.relations[1].generator == "b");
  REQUIRE(p.relations[1].image.size() == 2);
  CHECK(p.relations[1].image[0].generator == "b");
  CHECK(p.relations[1].image[1].generator == "a");
  CHECK(presentation_text(p) == "< a, b, z | z a z^-1 = b, z b z^-1 = b a >");
}

TEST_CASE("one-loop doubling gives the ascending presentation") {
  Presentation p = presentation(doubling_map());
  CHECK(p.generators == std::vector<std::string>{"a", "z"});
  REQUIRE(p.relations.size() == 1);
  REQUIRE(p.relations[0].image.size() == 2);
  CHECK(p.relations[0].image[0].generator == "a");
  CHECK(p.relations[0].image[0].exponent == 1);
  CHECK(p.relations[0].image[1].exponent == 1);
}

TEST_CASE("identity map presents the direct product") {
  GraphMap m = parse_graph_map(R"(
vertices: v
edges:
  a: v v
  b: v v
map:
  v -> v
  a -> a
  b -> b
)");
  Presentation p = presentation(m);
  for (const auto &rel : p.relations) {
    REQUIRE(rel.image.size() == 1);
    CHECK(rel.image[0].generator == rel.generator);
    CHECK(rel.image[0].exponent == 1);
  }
}

TEST_CASE("non-rose graphs present on a free basis of the right rank") {
  GraphMap m = parse_graph_map(R"(
vertices: v w
edges:
  a: v w
  b: v w
  c: w w
map:
  v -> v
  w -> w
  a -> a
  b -> a c
  c -> c -b a
)");
  REQUIRE(validate(m).empty());
  Presentation p = presentation(m);
  // rank = 1 - chi(V) = 1 - (2 - 3) = 2, plus the stable letter.
  CHECK(p.generators.size() == 3);
  CHECK(p.relations.size() == 2);
}

TEST_CASE("presentation powers compose the endomorphism") {
  GraphMap m = golden_map();
  Presentation p2 = presentation(m, 2);
  // Images under the square: a -> ba, b -> bab.
  REQUIRE(p2.relations.size() == 2);
  CHECK(p2.relations[0].image.size() == 2);
  CHECK(p2.relations[0].image[0].generator == "b");
  CHECK(p2.relations[0].image[1].generator == "a");
  CHECK(p2.relations[1].image.size() == 3);
}

TEST_CASE("abelianization matches the signed transition matrix on roses") {
  for (const GraphMap &m : {golden_map(), tribonacci_map(), folding_map()}) {
    std::vector<std::string> basis;
    for (EdgeId e = 0; e < m.graph.edge_count(); ++e)
      basis.push_back(m.graph.edge_name(e));
    Presentation p = presentation(m);
    auto mat = abelianized(p, basis);
    for (EdgeId e = 0; e < m.graph.edge_count(); ++e) {
      std::vector<long> expect(m.graph.edge_count(), 0);
      for (const auto &d : m.edge_image[e].steps)
        expect[d.edge] += d.forward ? 1 : -1;
      CHECK(mat[e] == expect);
    }
  }
}
