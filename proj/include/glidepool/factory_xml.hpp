#pragma once

#include <string>
#include <string_view>

#include "glidepool/model.hpp"

namespace glidepool {

/// Ingests a pilot factory entry from the XML subset: an <entry> element
/// with submit_attrs and attrs children. Attribute names and values are
/// whitespace-trimmed and matched case-insensitively; a leading '+' on a
/// submit attribute name is ignored.
FactoryEntry parse_factory_entry_xml(const std::string& text);

/// Canonical XML form of an entry; parse_factory_entry_xml inverts it.
std::string entry_to_xml(const FactoryEntry& entry);

}  // namespace glidepool
