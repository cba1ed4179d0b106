#include "glidepool/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace glidepool {

std::string to_string(Arch a) {
    switch (a) {
        case Arch::X86_64: return "x86_64";
        case Arch::Ppc64le: return "ppc64le";
        case Arch::Aarch64: return "aarch64";
    }
    return "x86_64";
}

std::optional<Arch> arch_from_string(std::string_view s) {
    if (ci_equal(s, "x86_64")) return Arch::X86_64;
    if (ci_equal(s, "ppc64le")) return Arch::Ppc64le;
    if (ci_equal(s, "aarch64")) return Arch::Aarch64;
    return std::nullopt;
}

std::string to_string(GpuUseClass c) {
    switch (c) {
        case GpuUseClass::MustUseGPU: return "MustUseGPU";
        case GpuUseClass::CanUseGPU: return "CanUseGPU";
        case GpuUseClass::CpuOnly: return "CpuOnly";
    }
    return "CpuOnly";
}

std::string to_string(PostWindowPolicy p) {
    return p == PostWindowPolicy::OpenToCpu ? "OpenToCpu" : "ReturnToSite";
}

bool JobAd::operator==(const JobAd& other) const {
    return id == other.id && submitTime == other.submitTime &&
           requestCpus == other.requestCpus && requestMemoryMB == other.requestMemoryMB &&
           requestGPUs == other.requestGPUs && requiresGPU == other.requiresGPU &&
           cudaCapability == other.cudaCapability && cudaRuntime == other.cudaRuntime &&
           gpuMemoryMB == other.gpuMemoryMB && archList == other.archList &&
           maxWallTimeSecs == other.maxWallTimeSecs && runTimeSecs == other.runTimeSecs &&
           priority == other.priority && equal(extraRequirements, other.extraRequirements);
}

bool FactoryEntry::provides_gpus() const {
    return resourceSlots && ci_equal(resourceSlots->resourceName, "GPUs") &&
           resourceSlots->count >= 1;
}

int FactoryEntry::gpu_slot_count() const {
    return provides_gpus() ? resourceSlots->count : 0;
}

GpuUseClass classify_gpu_use(const JobAd& job) {
    if (job.requiresGPU != 0) return GpuUseClass::MustUseGPU;
    return job.requestGPUs > 0 ? GpuUseClass::CanUseGPU : GpuUseClass::CpuOnly;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

ResourceSlots parse_resource_slots(std::string_view text) {
    std::vector<std::string_view> parts;
    std::string_view rest = text;
    while (true) {
        std::size_t comma = rest.find(',');
        parts.push_back(trim(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (parts.size() != 3)
        throw IngestError("resource slots descriptor '" + std::string(text) +
                          "': expected NAME,COUNT,type=TYPE");

    ResourceSlots out;
    out.resourceName = std::string(parts[0]);

    std::string_view countText = parts[1];
    auto [p, ec] = std::from_chars(countText.data(), countText.data() + countText.size(), out.count);
    if (ec != std::errc() || p != countText.data() + countText.size())
        throw IngestError("resource slots descriptor '" + std::string(text) +
                          "': count '" + std::string(countText) + "' is not an integer");

    std::string_view typePart = parts[2];
    constexpr std::string_view prefix = "type=";
    if (typePart.size() < prefix.size() || !ci_equal(typePart.substr(0, prefix.size()), prefix))
        throw IngestError("resource slots descriptor '" + std::string(text) +
                          "': third field must be type=TYPE");
    out.slotType = std::string(trim(typePart.substr(prefix.size())));
    return out;
}

bool static_entry_compat(const JobAd& job, const FactoryEntry& entry) {
    if (std::find(job.archList.begin(), job.archList.end(), entry.arch) == job.archList.end())
        return false;
    if (job.maxWallTimeSecs > entry.glideinMaxWalltimeSecs) return false;
    if (job.requestCpus > entry.glideinCpus) return false;
    if (job.requestMemoryMB > entry.glideinMaxMemMBs) return false;
    if (classify_gpu_use(job) == GpuUseClass::MustUseGPU &&
        entry.gpu_slot_count() < job.requestGPUs)
        return false;
    return true;
}

}  // namespace glidepool
