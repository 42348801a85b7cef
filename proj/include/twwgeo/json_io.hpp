#pragma once

#include <string>

#include "json.hpp"
#include "twwgeo/apus.hpp"
#include "twwgeo/circular_arc.hpp"
#include "twwgeo/families.hpp"
#include "twwgeo/grids.hpp"
#include "twwgeo/mergewidth.hpp"
#include "twwgeo/structures.hpp"
#include "twwgeo/tww.hpp"

namespace twwgeo {

using Json = nlohmann::json;

// Serializers emit the stable wire formats; parsers validate and raise
// BadFormat on anything malformed.

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json structure_to_json(const OrderedBinaryStructure& s);
OrderedBinaryStructure structure_from_json(const Json& j);

Json points_to_json(const PointSet& ps);
PointSet points_from_json(const Json& j);

Json grid_witness_to_json(const GridWitness& w);
GridWitness grid_witness_from_json(const Json& j);

Json contraction_to_json(const ContractionSequence& seq);
ContractionSequence contraction_from_json(const Json& j);

Json construction_to_json(const ConstructionSequence& seq);
ConstructionSequence construction_from_json(const Json& j);

Json arcs_to_json(const ArcFamily& f);
ArcFamily arcs_from_json(const Json& j);

Json segments_to_json(const SegmentFamily& f);
SegmentFamily segments_from_json(const Json& j);

Json terrain_to_json(const Terrain& t);
Terrain terrain_from_json(const Json& j);

Json transversal_to_json(const TransversalWitness& w);
TransversalWitness transversal_from_json(const Json& j);

/// Reads and parses a JSON file; BadFormat on unreadable or invalid input.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace twwgeo
