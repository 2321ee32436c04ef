#pragma once

#include <map>
#include <string>

#include "mssd/geo.hpp"

namespace mssd {

// A uniquely identified spatial entity. The id is unique within its source;
// (source_name, id) is the dedup key everywhere in the engine.
struct Location {
    std::string id;
    std::string source_name;
    GeoRegion region = GeoPoint{};
    std::map<std::string, std::string> attributes;

    // Set on copies returned by a query that answered an empty region with
    // its nearest entity; lets metrics exclude out-of-circle returns.
    bool supplemental = false;
};

// Canonical point of a location: point regions map to themselves, polygon
// regions to their vertex-mean centroid.
GeoPoint point_of(const Location& l);

// Composite dedup key.
std::string location_key(const Location& l);

}  // namespace mssd
