#pragma once

#include "wtopo/encodings.hpp"
#include "wtopo/graph.hpp"
#include "wtopo/landmarks.hpp"
#include "wtopo/persistence.hpp"
#include "wtopo/robustness.hpp"
#include "wtopo/vectorize.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace wtopo {

/// Header "source,0,1,...", then one row per source; unreachable entries print "inf".
void write_distance_csv(std::ostream& out, const DistanceMatrix& dm);

/// {"fraction":f,"landmarks":[...]}
std::string landmarks_to_json(const LandmarkSet& ls);

/// {"landmarks":[...],"cells":{"l":[...]},"local_landmarks":{"l":[...]},
///  "self_covered":[...],"epsilon_pairwise":x,"cover_radius":x,"c_epsilon":n}
std::string cover_to_json(const Cover& cover);

/// One {"vertices":[...],"scale":x} object per line, in filtration order.
void write_filtration_jsonl(std::ostream& out, const Filtration& f);

/// Array of {"dim":k,"points":[[b,d],...],"essential":[b,...]} for k = 0..max_dim.
std::string diagram_to_json(const PersistenceDiagram& d, int max_dim);

/// Accepts a single per-dimension object or an array of them. Throws ParseError.
PersistenceDiagram diagram_from_json(std::string_view text);

/// `resolution` lines of `resolution` comma-separated pixels; line r is persistence bin r.
void write_image_csv(std::ostream& out, const PersistenceImage& img);

/// One line per node with the row-major flattened image.
void write_features_csv(std::ostream& out, const NodeFeatureMatrix& m);

/// Little-endian block: uint64 rows, uint64 cols, then rows*cols float64 values row-major.
void write_features_binary(std::ostream& out, const NodeFeatureMatrix& m);
Matrix read_features_binary(std::istream& in);

/// Header row with the StabilityRow field names, one line per row.
void write_report_csv(std::ostream& out, const StabilityReport& report);

} // namespace wtopo
