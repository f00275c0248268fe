#pragma once

#include <json.hpp>

#include "matchstick/angles.hpp"
#include "matchstick/flexer.hpp"
#include "matchstick/ingest.hpp"
#include "matchstick/refiner.hpp"
#include "matchstick/rigidity.hpp"
#include "matchstick/symmetry.hpp"
#include "matchstick/verifier.hpp"

// nlohmann::json conversions for every report the CLI and server emit.
// Non-finite numbers are written as null and read back as +infinity.
namespace matchstick {

using json = nlohmann::json;

void to_json(json& j, const Point2& p);
void from_json(const json& j, Point2& p);
void to_json(json& j, const Isometry& iso);
void from_json(const json& j, Isometry& iso);
void to_json(json& j, const DegreeProfile& d);
void from_json(const json& j, DegreeProfile& d);
void to_json(json& j, const EdgePairViolation& v);
void from_json(const json& j, EdgePairViolation& v);
void to_json(json& j, const VertexEdgeViolation& v);
void from_json(const json& j, VertexEdgeViolation& v);
void to_json(json& j, const VerificationCertificate& c);
void from_json(const json& j, VerificationCertificate& c);
void to_json(json& j, const PatchReport& r);
void from_json(const json& j, PatchReport& r);
void to_json(json& j, const IngestReport& r);
void from_json(const json& j, IngestReport& r);
void to_json(json& j, const RefineReport& r);
void from_json(const json& j, RefineReport& r);
void to_json(json& j, const RigidityReport& r);
void from_json(const json& j, RigidityReport& r);
void to_json(json& j, const CriticalityScan& s);
void from_json(const json& j, CriticalityScan& s);
void to_json(json& j, const PebbleGameResult& r);
void from_json(const json& j, PebbleGameResult& r);
void to_json(json& j, const SymmetryGroup& g);
void from_json(const json& j, SymmetryGroup& g);
void to_json(json& j, const AngleFan& f);
void from_json(const json& j, AngleFan& f);
void to_json(json& j, const AngleListReport& r);
void from_json(const json& j, AngleListReport& r);
void to_json(json& j, const TraceRow& r);
void from_json(const json& j, TraceRow& r);

json embedding_to_json(const Embedding& emb);
Embedding embedding_from_json(const json& j);

}  // namespace matchstick
