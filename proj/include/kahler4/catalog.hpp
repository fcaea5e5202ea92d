#pragma once

#include <map>
#include <string>
#include <vector>

#include "kahler4/chart.hpp"

namespace kahler4 {

struct FixtureInfo {
    std::string name;
    std::map<std::string, double> params;  // names with default values
    std::string summary;
};

// Registered fixtures in a stable order.
const std::vector<FixtureInfo>& list_fixtures();

// Instantiate a fixture with parameter overrides. Throws UnknownFixture for an
// unregistered name and BadParameter for unknown or out-of-range parameters.
ChartSpec get_fixture(const std::string& name,
                      const std::map<std::string, double>& overrides = {});

}  // namespace kahler4
