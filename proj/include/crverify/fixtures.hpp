#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crverify/spec.hpp"

namespace crv {

struct FixtureInfo {
    std::string name;
    std::string summary;
};

std::vector<FixtureInfo> fixture_list();

/// Spec document (pretty-printed JSON) of a built-in fixture.
std::optional<std::string> fixture_document(const std::string& name);

/// Throws SpecError(Missing) for an unknown name.
SpecFile load_fixture(const std::string& name);

}  // namespace crv
