#include "tableau.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>

#include "errors.hpp"
#include "parallel.hpp"

namespace minuscule {

ContentVector::ContentVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto &b : bits_)
        if (b > 1) throw ValidationError("content vector entries must be 0 or 1");
}

ContentVector ContentVector::from_string(const std::string &s) {
    std::vector<std::uint8_t> bits;
    for (char c : s) {
        if (c == '0' || c == '1') bits.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c != ',' && c != ' ' && c != '(' && c != ')')
            throw ValidationError("bad content vector character '" + std::string(1, c) + "'");
    }
    return ContentVector(std::move(bits));
}

std::size_t ContentVector::popcount() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

ContentVector ContentVector::rotated() const {
    ContentVector r(*this);
    if (!r.bits_.empty()) std::rotate(r.bits_.begin(), r.bits_.begin() + 1, r.bits_.end());
    return r;
}

std::size_t ContentVector::period() const {
    const std::size_t m = bits_.size();
    for (std::size_t e = 1; e <= m; ++e) {
        if (m % e) continue;
        bool ok = true;
        for (std::size_t i = 0; i + e < m && ok; ++i) ok = bits_[i] == bits_[i + e];
        if (ok) return e;
    }
    return 0;
}

std::string ContentVector::to_string() const {
    std::string s;
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

bool is_increasing(const Poset &poset, std::span<const Label> labels, int ceiling) {
    if (labels.size() != poset.size()) return false;
    for (Label l : labels)
        if (l < 1 || l > ceiling) return false;
    for (const auto &[a, b] : poset.covers())
        if (labels[a] >= labels[b]) return false;
    return true;
}

IncreasingTableau::IncreasingTableau(const Poset &poset, std::vector<Label> labels, int ceiling)
    : labels_(std::move(labels)), ceiling_(ceiling) {
    if (ceiling < 0) throw ValidationError("negative ceiling");
    if (labels_.size() != poset.size())
        throw ValidationError("tableau has " + std::to_string(labels_.size()) + " labels for a poset of size " +
                              std::to_string(poset.size()));
    if (!is_increasing(poset, labels_, ceiling)) throw ValidationError("labels are not strictly increasing in [1, m]");
}

IncreasingTableau IncreasingTableau::unchecked(std::vector<Label> labels, int ceiling) {
    IncreasingTableau t;
    t.labels_ = std::move(labels);
    t.ceiling_ = ceiling;
    return t;
}

int IncreasingTableau::distinct_labels() const {
    std::vector<bool> seen(static_cast<std::size_t>(ceiling_) + 1, false);
    int n = 0;
    for (Label l : labels_)
        if (!seen[l]) {
            seen[l] = true;
            ++n;
        }
    return n;
}

std::size_t TableauHash::operator()(const IncreasingTableau &t) const {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(t.ceiling());
    for (Label l : t.labels()) {
        h ^= l;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

GaplessTableau::GaplessTableau(IncreasingTableau t) : t_(std::move(t)) {
    if (!t_.is_gapless()) throw ValidationError("tableau is not gapless");
}

void apply_kbk(const Poset &poset, std::span<Label> labels, Label i) {
    const Label j = static_cast<Label>(i + 1);
    // A box labeled i touches the set only through upper covers labeled i+1,
    // a box labeled i+1 only through lower covers labeled i. A flip never
    // changes a neighbor's decision: adjacent i/i+1 pairs both stay put.
    for (Element x = 0; x < labels.size(); ++x) {
        if (labels[x] == i) {
            bool lonely = true;
            for (Element y : poset.upper_covers(x))
                if (labels[y] == j) {
                    lonely = false;
                    break;
                }
            if (lonely) labels[x] = j;
        } else if (labels[x] == j) {
            bool lonely = true;
            for (Element y : poset.lower_covers(x))
                if (labels[y] == i) {
                    lonely = false;
                    break;
                }
            if (lonely) labels[x] = i;
        }
    }
}

void apply_promotion(const Poset &poset, std::span<Label> labels, int ceiling) {
    for (int i = 1; i < ceiling; ++i) apply_kbk(poset, labels, static_cast<Label>(i));
}

IncreasingTableau kbk(const Poset &poset, const IncreasingTableau &t, int i) {
    if (i < 1 || i > t.ceiling() - 1)
        throw ParameterError("K-Bender-Knuth index " + std::to_string(i) + " outside [1, " +
                             std::to_string(t.ceiling() - 1) + "]");
    if (t.size() != poset.size()) throw ParameterError("tableau does not match poset");
    std::vector<Label> labels(t.labels().begin(), t.labels().end());
    apply_kbk(poset, labels, static_cast<Label>(i));
    return IncreasingTableau::unchecked(std::move(labels), t.ceiling());
}

IncreasingTableau promotion(const Poset &poset, const IncreasingTableau &t) {
    if (t.size() != poset.size()) throw ParameterError("tableau does not match poset");
    std::vector<Label> labels(t.labels().begin(), t.labels().end());
    apply_promotion(poset, labels, t.ceiling());
    return IncreasingTableau::unchecked(std::move(labels), t.ceiling());
}

ContentVector content(const IncreasingTableau &t) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(t.ceiling()), 0);
    for (Label l : t.labels()) bits[l - 1] = 1;
    return ContentVector(std::move(bits));
}

GaplessTableau deflate(const IncreasingTableau &t) {
    std::vector<Label> rank_of(static_cast<std::size_t>(t.ceiling()) + 1, 0);
    for (Label l : t.labels()) rank_of[l] = 1;
    Label running = 0;
    for (std::size_t l = 1; l < rank_of.size(); ++l)
        if (rank_of[l]) rank_of[l] = ++running;
    std::vector<Label> out;
    out.reserve(t.size());
    for (Label l : t.labels()) out.push_back(rank_of[l]);
    return GaplessTableau(IncreasingTableau::unchecked(std::move(out), running));
}

std::size_t vector_inflation(const ContentVector &v, std::size_t k) {
    if (k < 1) throw ParameterError("vector inflation index must be >= 1");
    std::size_t seen = 0;
    for (std::size_t n = 0; n < v.size(); ++n)
        if (v[n] && ++seen == k) return n + 1;
    throw ParameterError("vector inflation index " + std::to_string(k) + " exceeds the " +
                         std::to_string(v.popcount()) + " ones of the vector");
}

IncreasingTableau inflate(const GaplessTableau &s, const ContentVector &v) {
    if (v.popcount() != static_cast<std::size_t>(s.ceiling()))
        throw ParameterError("content vector has " + std::to_string(v.popcount()) + " ones but the tableau has " +
                             std::to_string(s.ceiling()) + " labels");
    std::vector<Label> position(static_cast<std::size_t>(s.ceiling()) + 1, 0);
    for (std::size_t n = 0, seen = 0; n < v.size(); ++n)
        if (v[n]) position[++seen] = static_cast<Label>(n + 1);
    std::vector<Label> out;
    out.reserve(s.labels().size());
    for (Label l : s.labels()) out.push_back(position[l]);
    return IncreasingTableau::unchecked(std::move(out), static_cast<int>(v.size()));
}

namespace {

struct CapReached {};

// Labels are assigned along the linear extension; a box's label ranges over
// [1 + max(lower cover labels), m - corank]. Every lower cover z satisfies
// label(z) <= m - corank(z) <= m - corank(x) - 1, so the range is never empty
// once it is nonempty at the first box.
class IncreasingSearch {
public:
    IncreasingSearch(const Poset &poset, int ceiling) : poset_(poset), ceiling_(ceiling), labels_(poset.size(), 0) {}

    template <typename Visit>
    void run_from(std::size_t pos, Visit &&visit) {
        const auto order = poset_.linear_extension();
        if (pos == order.size()) {
            visit(std::span<const Label>(labels_));
            return;
        }
        const Element x = order[pos];
        const auto [lo, hi] = range(x);
        for (int v = lo; v <= hi; ++v) {
            labels_[x] = static_cast<Label>(v);
            run_from(pos + 1, visit);
        }
        labels_[x] = 0;
    }

    std::pair<int, int> range(Element x) const {
        int lo = 1;
        for (Element y : poset_.lower_covers(x)) lo = std::max(lo, labels_[y] + 1);
        return {lo, ceiling_ - poset_.corank(x)};
    }

    std::vector<Label> &labels() { return labels_; }

private:
    const Poset &poset_;
    int ceiling_;
    std::vector<Label> labels_;
};

} // namespace

void for_each_increasing(const Poset &poset, int ceiling, const std::function<void(std::span<const Label>)> &visit) {
    if (ceiling < 0) throw ParameterError("negative ceiling");
    IncreasingSearch search(poset, ceiling);
    search.run_from(0, visit);
}

std::vector<IncreasingTableau> enumerate_increasing(const Poset &poset, int ceiling, std::uint64_t cap,
                                                    unsigned threads) {
    if (ceiling < 0) throw ParameterError("negative ceiling");
    if (ceiling > 0xffff) throw ParameterError("ceiling too large");
    std::atomic<std::uint64_t> produced{0};
    std::vector<IncreasingTableau> out;

    auto collect = [&](std::vector<IncreasingTableau> &sink) {
        return [&](std::span<const Label> labels) {
            if (produced.fetch_add(1) >= cap) throw CapReached{};
            sink.push_back(IncreasingTableau::unchecked({labels.begin(), labels.end()}, ceiling));
        };
    };

    try {
        if (poset.empty()) {
            out.push_back(IncreasingTableau::unchecked({}, ceiling));
        } else {
            // Split on the label of the first box in the linear extension.
            const Element first = poset.linear_extension()[0];
            const int hi = ceiling - poset.corank(first);
            const std::size_t branches = hi >= 1 ? static_cast<std::size_t>(hi) : 0;
            std::vector<std::vector<IncreasingTableau>> parts(branches);
            parallel_for(branches, threads, [&](std::size_t b) {
                IncreasingSearch search(poset, ceiling);
                search.labels()[first] = static_cast<Label>(b + 1);
                search.run_from(1, collect(parts[b]));
            });
            for (auto &p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
        }
    } catch (const CapReached &) {
        throw ResourceError("increasing tableau enumeration exceeded its cap", cap);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// A gapless tableau with ceiling m is a chain of ideals from empty to P whose
// successive differences are nonempty antichains (the boxes of each label);
// each difference is a nonempty subset of the minimal elements of the
// complement. Every such path reaches P, so the search never backtracks
// without output.
class GaplessSearch {
public:
    explicit GaplessSearch(const Poset &poset) : poset_(poset), ideal_(poset.size()), labels_(poset.size(), 0) {}

    struct Prefix {
        Bitset ideal;
        std::vector<Label> labels;
        Label next;
    };

    template <typename Visit>
    void run(Label next, Visit &&visit) {
        if (ideal_.all()) {
            visit(labels_, static_cast<int>(next) - 1);
            return;
        }
        const auto mins = frontier();
        const std::uint64_t subsets = std::uint64_t{1} << mins.size();
        for (std::uint64_t mask = 1; mask < subsets; ++mask) {
            place(mins, mask, next);
            run(static_cast<Label>(next + 1), visit);
            unplace(mins, mask);
        }
    }

    std::vector<Element> frontier() const {
        std::vector<Element> mins;
        for (Element x = 0; x < poset_.size(); ++x)
            if (!ideal_.test(x) && poset_.lower_cover_mask(x).is_subset_of(ideal_)) mins.push_back(x);
        if (mins.size() >= 63) throw UnsupportedError("antichain frontier too wide for gapless enumeration");
        return mins;
    }

    void place(const std::vector<Element> &mins, std::uint64_t mask, Label label) {
        for (std::size_t b = 0; b < mins.size(); ++b)
            if (mask >> b & 1u) {
                ideal_.set(mins[b]);
                labels_[mins[b]] = label;
            }
    }
    void unplace(const std::vector<Element> &mins, std::uint64_t mask) {
        for (std::size_t b = 0; b < mins.size(); ++b)
            if (mask >> b & 1u) {
                ideal_.reset(mins[b]);
                labels_[mins[b]] = 0;
            }
    }

    void load(const Prefix &p) {
        ideal_ = p.ideal;
        labels_ = p.labels;
    }
    Prefix snapshot(Label next) const { return {ideal_, labels_, next}; }
    bool complete() const { return ideal_.all(); }

private:
    const Poset &poset_;
    Bitset ideal_;
    std::vector<Label> labels_;
};

} // namespace

std::vector<GaplessTableau> enumerate_gapless(const Poset &poset, std::uint64_t cap, unsigned threads) {
    std::atomic<std::uint64_t> produced{0};
    auto emit_into = [&](std::vector<GaplessTableau> &sink) {
        return [&](const std::vector<Label> &labels, int m) {
            if (produced.fetch_add(1) >= cap) throw CapReached{};
            sink.emplace_back(IncreasingTableau::unchecked(labels, m));
        };
    };

    std::vector<GaplessTableau> out;
    try {
        // Expand breadth-first until there is enough independent work.
        std::vector<GaplessSearch::Prefix> frontier{GaplessSearch(poset).snapshot(1)};
        const std::size_t want = 64 * static_cast<std::size_t>(resolve_threads(threads));
        for (int depth = 0; depth < 6 && frontier.size() < want; ++depth) {
            std::vector<GaplessSearch::Prefix> expanded;
            bool grew = false;
            for (const auto &p : frontier) {
                GaplessSearch s(poset);
                s.load(p);
                if (s.complete()) {
                    expanded.push_back(p);
                    continue;
                }
                grew = true;
                const auto mins = s.frontier();
                for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << mins.size()); ++mask) {
                    s.place(mins, mask, p.next);
                    expanded.push_back(s.snapshot(static_cast<Label>(p.next + 1)));
                    s.unplace(mins, mask);
                }
            }
            frontier = std::move(expanded);
            if (!grew) break;
        }

        std::vector<std::vector<GaplessTableau>> parts(frontier.size());
        parallel_for(frontier.size(), threads, [&](std::size_t i) {
            GaplessSearch s(poset);
            s.load(frontier[i]);
            s.run(frontier[i].next, emit_into(parts[i]));
        });
        for (auto &p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
    } catch (const CapReached &) {
        throw ResourceError("gapless tableau enumeration exceeded its cap", cap);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_tableau(const Poset &poset, const IncreasingTableau &t) {
    if (!poset.shape() || !poset.boxes()) throw UnsupportedError("tableau text form needs a shape poset");
    if (t.size() != poset.size()) throw ParameterError("tableau does not match poset");
    std::ostringstream os;
    Element x = 0;
    for (const auto &row : poset.shape()->rows) {
        for (int c = 0; c < row.offset; ++c) os << (c ? "," : "") << '.';
        for (int c = 0; c < row.length; ++c, ++x) os << (row.offset + c ? "," : "") << t[x];
        os << '\n';
    }
    return os.str();
}

IncreasingTableau parse_tableau(const Poset &poset, const std::string &text, int ceiling) {
    if (!poset.shape()) throw UnsupportedError("tableau text form needs a shape poset");
    std::istringstream in(text);
    std::string line;
    std::vector<Label> labels;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (row >= poset.shape()->rows.size()) throw ValidationError("tableau text has too many rows");
        const auto &shape_row = poset.shape()->rows[row];
        std::istringstream cells(line);
        std::string cell;
        int col = 0;
        while (std::getline(cells, cell, ',')) {
            cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
            if (col < shape_row.offset) {
                if (cell != ".") throw ValidationError("expected '.' before row offset in row " + std::to_string(row + 1));
            } else {
                try {
                    labels.push_back(static_cast<Label>(std::stoi(cell)));
                } catch (const std::exception &) {
                    throw ValidationError("bad tableau label '" + cell + "'");
                }
            }
            ++col;
        }
        if (col != shape_row.offset + shape_row.length)
            throw ValidationError("row " + std::to_string(row + 1) + " has the wrong number of cells");
        ++row;
    }
    if (row != poset.shape()->rows.size()) throw ValidationError("tableau text has too few rows");
    return IncreasingTableau(poset, std::move(labels), ceiling);
}

} // namespace minuscule
