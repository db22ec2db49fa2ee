#include "minnorm/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace minnorm::kernels {

namespace {

const Ops* lookup(std::string_view name) {
    if (name == "scalar") return &scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2" && avx2_available()) return &avx2_ops();
#endif
    return nullptr;
}

const Ops* detect() {
    if (const char* env = std::getenv("MINNORM_KERNELS")) {
        if (const Ops* ops = lookup(env)) return ops;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return &avx2_ops();
#endif
    return &scalar_ops();
}

std::atomic<const Ops*>& active_slot() {
    static std::atomic<const Ops*> slot{detect()};
    return slot;
}

} // namespace

const Ops& active() {
    return *active_slot().load(std::memory_order_acquire);
}

bool select(std::string_view name) {
    const Ops* ops = lookup(name);
    if (!ops) return false;
    active_slot().store(ops, std::memory_order_release);
    return true;
}

std::string_view active_name() {
    return active().name;
}

} // namespace minnorm::kernels
