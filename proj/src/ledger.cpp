#include <unordered_set>

#include "rrgg/builder.hpp"

namespace rrgg {

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::Ugly: return "ugly";
        case Stage::Bad: return "bad";
        case Stage::Good: return "good";
        case Stage::Stitch: return "stitch";
    }
    return "?";
}

std::uint64_t RainbowLedger::key(Vertex i, Vertex j) noexcept {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
}

Colour RainbowLedger::reveal(const ColouredProcess& process, Vertex i, Vertex j, Stage stage) {
    revealed_.try_emplace(key(i, j), stage);
    return process.colour_of(i, j);
}

std::optional<Stage> RainbowLedger::revealed_in(Vertex i, Vertex j) const {
    const auto it = revealed_.find(key(i, j));
    if (it == revealed_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> RainbowLedger::try_register(const ColouredProcess& process, Vertex i, Vertex j,
                                                       Stage stage, std::string piece) {
    const Colour c = reveal(process, i, j, stage);
    if (const auto it = used_.find(c); it != used_.end()) return it->second;
    used_.emplace(c, entries_.size());
    entries_.push_back({std::min(i, j), std::max(i, j), c, process.length_of(i, j), std::move(piece)});
    return std::nullopt;
}

bool RainbowLedger::audit() const {
    std::unordered_set<Colour> seen;
    for (const auto& e : entries_) {
        if (!seen.insert(e.colour).second) return false;
    }
    return true;
}

}  // namespace rrgg
