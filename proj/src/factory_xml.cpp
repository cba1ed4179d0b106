#include "glidepool/factory_xml.hpp"

#include <charconv>
#include <cctype>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace glidepool {

namespace {

namespace pt = boost::property_tree;

// GLIDEIN_Max_Walltime is assumed to be in seconds (216000 s = 60 h); the
// paper never states the unit.
constexpr Seconds kDefaultMaxWalltimeSecs = 216000;
constexpr MegaBytes kDefaultMemPerCoreMB = 2000;  // standard pilot: 2 GB/core

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string canonical_attr_name(const std::string& raw) {
    std::string name = trim(raw);
    if (!name.empty() && name.front() == '+') name.erase(0, 1);
    return name;
}

std::int64_t parse_int(const std::string& value, const std::string& field) {
    std::string v = trim(value);
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw IngestError("factory entry field " + field + ": '" + value +
                          "' is not an integer");
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

FactoryEntry parse_factory_entry_xml(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw IngestError(std::string("malformed factory entry XML: ") + e.what());
    }

    auto entryNode = tree.get_child_optional("entry");
    if (!entryNode) throw IngestError("factory entry XML: missing <entry> element");

    FactoryEntry entry;
    entry.name = trim(entryNode->get<std::string>("<xmlattr>.name", ""));
    entry.gatekeeper = trim(entryNode->get<std::string>("<xmlattr>.gatekeeper", ""));
    entry.gridtype = trim(entryNode->get<std::string>("<xmlattr>.gridtype", ""));
    entry.authMethod = trim(entryNode->get<std::string>("<xmlattr>.auth_method", ""));
    if (entry.name.empty()) throw IngestError("factory entry XML: missing mandatory field name");
    if (entry.gatekeeper.empty())
        throw IngestError("factory entry XML: missing mandatory field gatekeeper");

    bool haveCpus = false, haveSite = false;
    bool haveMaxMem = false, haveWalltime = false, haveSubmitMaxMemory = false, haveXcount = false;

    // submit_attrs may sit under <config><submit>, under <config>, or
    // directly under <entry>, depending on how much of the factory schema
    // the source kept
    const pt::ptree* submitAttrs = nullptr;
    if (auto cfg = entryNode->get_child_optional("config")) {
        if (auto sub = cfg->get_child_optional("submit"))
            if (auto sa = sub->get_child_optional("submit_attrs")) submitAttrs = &*sa;
        if (!submitAttrs)
            if (auto sa = cfg->get_child_optional("submit_attrs")) submitAttrs = &*sa;
    }
    if (!submitAttrs)
        if (auto sa = entryNode->get_child_optional("submit_attrs")) submitAttrs = &*sa;

    if (submitAttrs) {
        for (const auto& [tag, node] : *submitAttrs) {
            if (tag != "submit_attr") continue;
            std::string name = canonical_attr_name(node.get<std::string>("<xmlattr>.name", ""));
            std::string value = node.get<std::string>("<xmlattr>.value", "");
            if (ci_equal(name, "maxMemory")) {
                entry.submitAttrs.maxMemory = parse_int(value, "maxMemory");
                haveSubmitMaxMemory = true;
            } else if (ci_equal(name, "xcount")) {
                entry.submitAttrs.xcount = static_cast<int>(parse_int(value, "xcount"));
                haveXcount = true;
            } else if (ci_equal(name, "Request_GPUs")) {
                entry.submitAttrs.requestGPUs =
                    static_cast<int>(parse_int(value, "Request_GPUs"));
            }
        }
    }

    if (auto attrs = entryNode->get_child_optional("attrs")) {
        for (const auto& [tag, node] : *attrs) {
            if (tag != "attr") continue;
            std::string name = canonical_attr_name(node.get<std::string>("<xmlattr>.name", ""));
            std::string value = node.get<std::string>("<xmlattr>.value", "");
            if (ci_equal(name, "GLIDEIN_CMSSite")) {
                entry.cmsSite = trim(value);
                haveSite = true;
            } else if (ci_equal(name, "GLIDEIN_CPUS")) {
                entry.glideinCpus = static_cast<int>(parse_int(value, "GLIDEIN_CPUS"));
                haveCpus = true;
            } else if (ci_equal(name, "GLIDEIN_MaxMemMBs")) {
                entry.glideinMaxMemMBs = parse_int(value, "GLIDEIN_MaxMemMBs");
                haveMaxMem = true;
            } else if (ci_equal(name, "GLIDEIN_Max_Walltime")) {
                entry.glideinMaxWalltimeSecs = parse_int(value, "GLIDEIN_Max_Walltime");
                haveWalltime = true;
            } else if (ci_equal(name, "GLIDEIN_Resource_Slots")) {
                entry.resourceSlots = parse_resource_slots(trim(value));
            } else if (ci_equal(name, "GLIDEIN_Arch")) {
                auto arch = arch_from_string(trim(value));
                if (!arch)
                    throw IngestError("factory entry field GLIDEIN_Arch: unknown architecture '" +
                                      trim(value) + "'");
                entry.arch = *arch;
            }
        }
    }

    if (!haveSite) throw IngestError("factory entry XML: missing mandatory field GLIDEIN_CMSSite");
    if (!haveCpus) throw IngestError("factory entry XML: missing mandatory field GLIDEIN_CPUS");
    if (entry.glideinCpus < 1)
        throw IngestError("factory entry field GLIDEIN_CPUS: must be >= 1");
    if (entry.resourceSlots && ci_equal(entry.resourceSlots->resourceName, "GPUs") &&
        entry.resourceSlots->count < 1)
        throw IngestError("factory entry field GLIDEIN_Resource_Slots: GPU count must be >= 1");

    if (!haveWalltime) entry.glideinMaxWalltimeSecs = kDefaultMaxWalltimeSecs;
    if (!haveMaxMem)
        entry.glideinMaxMemMBs = haveSubmitMaxMemory ? entry.submitAttrs.maxMemory
                                                     : kDefaultMemPerCoreMB * entry.glideinCpus;
    if (!haveSubmitMaxMemory) entry.submitAttrs.maxMemory = entry.glideinMaxMemMBs;
    if (!haveXcount) entry.submitAttrs.xcount = entry.glideinCpus;

    return entry;
}

std::string entry_to_xml(const FactoryEntry& entry) {
    std::ostringstream out;
    out << "<entry name=\"" << xml_escape(entry.name) << "\"";
    if (!entry.authMethod.empty()) out << " auth_method=\"" << xml_escape(entry.authMethod) << "\"";
    out << " gatekeeper=\"" << xml_escape(entry.gatekeeper) << "\"";
    if (!entry.gridtype.empty()) out << " gridtype=\"" << xml_escape(entry.gridtype) << "\"";
    out << ">\n";
    out << "  <config>\n    <submit_attrs>\n";
    out << "      <submit_attr name=\"+maxMemory\" value=\"" << entry.submitAttrs.maxMemory
        << "\"/>\n";
    out << "      <submit_attr name=\"+xcount\" value=\"" << entry.submitAttrs.xcount << "\"/>\n";
    out << "      <submit_attr name=\"Request_GPUs\" value=\"" << entry.submitAttrs.requestGPUs
        << "\"/>\n";
    out << "    </submit_attrs>\n  </config>\n";
    out << "  <attrs>\n";
    out << "    <attr name=\"GLIDEIN_CMSSite\" type=\"string\" value=\""
        << xml_escape(entry.cmsSite) << "\"/>\n";
    out << "    <attr name=\"GLIDEIN_CPUS\" type=\"string\" value=\"" << entry.glideinCpus
        << "\"/>\n";
    out << "    <attr name=\"GLIDEIN_MaxMemMBs\" type=\"int\" value=\"" << entry.glideinMaxMemMBs
        << "\"/>\n";
    out << "    <attr name=\"GLIDEIN_Max_Walltime\" type=\"int\" value=\""
        << entry.glideinMaxWalltimeSecs << "\"/>\n";
    if (entry.resourceSlots) {
        out << "    <attr name=\"GLIDEIN_Resource_Slots\" type=\"string\" value=\""
            << xml_escape(entry.resourceSlots->resourceName) << "," << entry.resourceSlots->count
            << ",type=" << xml_escape(entry.resourceSlots->slotType) << "\"/>\n";
    }
    out << "    <attr name=\"GLIDEIN_Arch\" type=\"string\" value=\"" << to_string(entry.arch)
        << "\"/>\n";
    out << "  </attrs>\n</entry>\n";
    return out.str();
}

}  // namespace glidepool
