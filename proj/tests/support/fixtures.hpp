#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "matchstick/geometry.hpp"
#include "matchstick/ingest.hpp"

namespace matchstick::testing {

std::string asset_path(std::string_view relative);
std::string read_file(const std::string& path);

/// Ingested TikZ figure from assets/figures/<stem>.tikz.
IngestResult ingest_figure(std::string_view stem);

struct RefinedFigure {
  Graph graph;
  Embedding raw;      // ingested, unit-edge scale
  Embedding refined;  // default refine()
  NameMap names;
  std::vector<VertexId> markers;
};

/// Ingest + refine, memoized per stem.
const RefinedFigure& refined_figure(std::string_view stem);

/// Every figure stem with coordinate data, in file-name order.
std::vector<std::string> figure_stems();

struct Drawing {
  Graph graph;
  Embedding embedding;
};

Drawing unit_triangle();
Drawing unit_square();
/// Triangular-lattice hexagon: a center of degree 6 and its six neighbors.
Drawing lattice_wheel();

/// Random connected graph on `n` vertices with points in [0, 3)^2; lengths are
/// arbitrary (for derivative and rank properties, not matchstick checks).
Drawing random_graph(std::mt19937_64& rng, int n, int extra_edges);

/// Random planar isometry (rotation or reflection plus translation).
Isometry random_isometry(std::mt19937_64& rng);

}  // namespace matchstick::testing
