#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "glidepool/classad.hpp"
#include "glidepool/expression.hpp"

namespace glidepool {

using Seconds = std::int64_t;
using MegaBytes = std::int64_t;

/// Raised when scenario or entry ingestion rejects its input.
class IngestError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Arch { X86_64, Ppc64le, Aarch64 };

std::string to_string(Arch a);
std::optional<Arch> arch_from_string(std::string_view s);

/// The three GPU interaction cases for a workload request.
enum class GpuUseClass { MustUseGPU, CanUseGPU, CpuOnly };

std::string to_string(GpuUseClass c);

/*
 * A workload request: resource shape, GPU attributes, admissible
 * architectures and the scenario-declared true runtime.
 */
struct JobAd {
    std::string id;
    Seconds submitTime = 0;
    int requestCpus = 1;
    MegaBytes requestMemoryMB = 0;
    int requestGPUs = 0;
    int requiresGPU = 0;  // boolean flag, 0 or 1
    std::optional<double> cudaCapability;        // minimum capability
    std::optional<std::string> cudaRuntime;      // required runtime version
    std::optional<MegaBytes> gpuMemoryMB;        // minimum device memory
    std::vector<Arch> archList;                  // non-empty, no duplicates
    Seconds maxWallTimeSecs = 0;
    Seconds runTimeSecs = 0;
    ExprPtr extraRequirements;  // nullptr when absent
    std::int64_t priority = 0;

    bool operator==(const JobAd& other) const;
};

struct GpuDevice {
    std::string uuid;
    std::string deviceName;
    double cudaCapability = 0.0;
    MegaBytes globalMemoryMB = 0;
    std::string driverVersion;           // CUDA driver version, e.g. "11.3"
    int maxSupportedVersion = 0;         // e.g. 11030
    std::vector<std::string> supportedRuntimes;
    double clockMhz = 0.0;
    int computeUnits = 0;
    int coresPerCU = 0;
    bool eccEnabled = false;
    std::string nvidiaDriverVersion;     // e.g. "515.48.07"; empty when unknown

    bool operator==(const GpuDevice&) const = default;
};

struct NodeSpec {
    std::string nodeId;
    std::string siteName;
    int cpus = 0;
    MegaBytes memoryMB = 0;
    Arch arch = Arch::X86_64;
    std::vector<GpuDevice> gpus;  // homogeneous device model per node

    bool operator==(const NodeSpec&) const = default;
};

struct SubmitAttrs {
    MegaBytes maxMemory = 0;  // CE-facing memory request
    int xcount = 0;
    int requestGPUs = 0;      // serialized as Request_GPUs

    bool operator==(const SubmitAttrs&) const = default;
};

struct ResourceSlots {
    std::string resourceName;
    int count = 0;
    std::string slotType;

    bool operator==(const ResourceSlots&) const = default;
};

/*
 * Static per-CE resource description, the first matchmaking stage's side of
 * the bargain. Mirrors the pilot factory entry XML subset.
 */
struct FactoryEntry {
    std::string name;
    std::string gatekeeper;
    std::string gridtype;
    std::string authMethod;  // opaque pass-through
    std::string cmsSite;
    SubmitAttrs submitAttrs;
    int glideinCpus = 1;
    MegaBytes glideinMaxMemMBs = 0;  // advertised slot size
    Seconds glideinMaxWalltimeSecs = 0;
    std::optional<ResourceSlots> resourceSlots;
    Arch arch = Arch::X86_64;

    bool operator==(const FactoryEntry& other) const = default;

    /// True when the entry grants GPU resource slots.
    bool provides_gpus() const;
    int gpu_slot_count() const;
};

enum class PostWindowPolicy { OpenToCpu, ReturnToSite };

std::string to_string(PostWindowPolicy p);

struct SitePolicy {
    std::string siteName;
    Seconds holdWindowSecs = 1800;
    PostWindowPolicy postWindow = PostWindowPolicy::OpenToCpu;
    int maxQueuedPilots = 0;
    Seconds ceGrantPeriodSecs = 0;

    bool operator==(const SitePolicy&) const = default;
};

/// RequiresGPU/RequestGPUs truth table. The invalid combination
/// (requiresGPU=1, requestGPUs=0) is rejected at ingestion.
GpuUseClass classify_gpu_use(const JobAd& job);

/// `NAME,COUNT,type=TYPE`, whitespace-tolerant.
ResourceSlots parse_resource_slots(std::string_view text);

/// First-stage compatibility of a job with a factory entry: architecture,
/// walltime, cpus, memory, and the GPU gate (only MustUseGPU jobs require
/// GPU-providing entries).
bool static_entry_compat(const JobAd& job, const FactoryEntry& entry);

}  // namespace glidepool
