#include "mn/gsmn.hpp"

#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace mn {

namespace {

/// Raised inside a replay when the prefix runs out of decisions; the
/// pending triplet is what the learner would ask next.
struct SuspendSignal {};

class GsmnEngine {
  public:
    GsmnEngine(int n, const IndependenceTest* test) : n_(n), test_(test) {}

    GsmnEngine(int n, std::span<const TraceEntry> prefix)
        : n_(n), prefix_(prefix), replay_(true) {}

    /// Returns true when the control flow ran to completion, false when a
    /// replay suspended waiting for a decision (pending() is then set).
    bool run() {
        blankets_.assign(n_, {});
        try {
            for (int x = 0; x < n_; ++x)
                blankets_[x] = grow_shrink(x);
        } catch (const SuspendSignal&) {
            return false;
        }
        if (replay_ && pos_ < prefix_.size())
            throw std::runtime_error("replay prefix has " +
                                     std::to_string(prefix_.size() - pos_) +
                                     " unused decisions past the closure");
        return true;
    }

    std::vector<int> grow_shrink(int x) {
        std::vector<char> member(n_, 0);
        std::vector<int> blanket; // kept sorted ascending

        bool changed = true;
        while (changed) {
            changed = false;
            for (int w = 0; w < n_; ++w) {
                if (w == x || member[w])
                    continue;
                if (!ask(Triplet(x, w, blanket))) { // dependent: admit
                    member[w] = 1;
                    blanket.insert(std::lower_bound(blanket.begin(), blanket.end(), w), w);
                    changed = true;
                }
            }
        }

        changed = true;
        while (changed) {
            changed = false;
            for (int w = 0; w < n_; ++w) {
                if (!member[w])
                    continue;
                std::vector<int> cond;
                cond.reserve(blanket.size() - 1);
                for (int v : blanket)
                    if (v != w)
                        cond.push_back(v);
                if (ask(Triplet(x, w, std::move(cond)))) { // independent: drop
                    member[w] = 0;
                    blanket.erase(std::lower_bound(blanket.begin(), blanket.end(), w));
                    changed = true;
                }
            }
        }
        return blanket;
    }

    Structure structure(bool and_rule) const {
        Structure g(n_);
        for (int x = 0; x < n_; ++x)
            for (int y : blankets_[x])
                if (!and_rule ||
                    std::binary_search(blankets_[y].begin(), blankets_[y].end(), x))
                    g.set_edge(x, y, true);
        return g;
    }

    Trace& trace() { return trace_; }
    const Triplet& pending() const { return *pending_; }
    const std::vector<int>& blanket(int x) const { return blankets_[x]; }

  private:
    bool ask(Triplet t) {
        auto it = memo_.find(t);
        if (it != memo_.end())
            return it->second;
        bool value;
        if (replay_) {
            if (pos_ >= prefix_.size()) {
                pending_ = std::move(t);
                throw SuspendSignal{};
            }
            const TraceEntry& e = prefix_[pos_];
            if (!(e.triplet == t))
                throw std::runtime_error("replay mismatch at position " + std::to_string(pos_));
            value = e.independent;
            ++pos_;
        } else {
            value = test_->evaluate(t).independent;
        }
        memo_.emplace(t, value);
        trace_.push_back(TraceEntry{std::move(t), value});
        return value;
    }

    int n_;
    const IndependenceTest* test_ = nullptr;
    std::span<const TraceEntry> prefix_;
    std::size_t pos_ = 0;
    bool replay_ = false;
    std::unordered_map<Triplet, bool, TripletHash> memo_;
    Trace trace_;
    std::optional<Triplet> pending_;
    std::vector<std::vector<int>> blankets_;
};

} // namespace

BlanketResult grow_shrink_blanket(int x, int n, const IndependenceTest& test) {
    if (x < 0 || x >= n)
        throw std::invalid_argument("variable index out of range");
    GsmnEngine engine(n, &test);
    std::vector<int> blanket = engine.grow_shrink(x);
    return BlanketResult{std::move(blanket), std::move(engine.trace())};
}

GsmnResult gsmn_learn(int n, const IndependenceTest& test, bool and_rule) {
    GsmnEngine engine(n, &test);
    engine.run();
    return GsmnResult{engine.structure(and_rule), std::move(engine.trace())};
}

ReplayStep next_query(int n, std::span<const TraceEntry> prefix, bool and_rule) {
    GsmnEngine engine(n, prefix);
    if (engine.run())
        return ReplayStep{std::nullopt, engine.structure(and_rule)};
    return ReplayStep{engine.pending(), std::nullopt};
}

void write_trace(std::ostream& out, const Trace& trace) {
    for (const TraceEntry& e : trace) {
        out << e.triplet.x() << " " << e.triplet.y() << " |";
        for (int v : e.triplet.z())
            out << " " << v;
        out << " -> " << (e.independent ? "I" : "D") << "\n";
    }
}

} // namespace mn
