#include <smp/downset_dp.hpp>
#include <smp/error.hpp>

#include <algorithm>

namespace smp {

namespace {

BigCount run_table(const Dag& g, const PathDecomposition& X, int max_width, const DpObserver& observe)
{
    const int p = g.size();
    size_t big = 0;
    for (const auto& b : X.bags) big = std::max(big, b.size());
    if (static_cast<int>(big) - 1 > max_width)
        throw CapExceeded("decomposition width " + std::to_string(big - 1) + " exceeds cap " + std::to_string(max_width));

    std::vector<int> slot(p, -1);
    std::vector<char> seen(p, 0);
    std::vector<int> seen_list;
    unsigned long long used = 0;  // occupied slot bits
    std::vector<BigCount> T(std::size_t{1} << big);
    T[0] = 1;

    std::vector<int> prev;
    int step = 0;
    for (const auto& bag : X.bags) {
        ++step;
        std::vector<int> diff;
        std::set_symmetric_difference(prev.begin(), prev.end(), bag.begin(), bag.end(), std::back_inserter(diff));
        if (diff.size() != 1) throw ValidationError("decomposition is not nice at bag " + std::to_string(step));
        const int v = diff[0];
        if (v < 0 || v >= p) throw ValidationError("bag " + std::to_string(step) + " names an unknown vertex");

        if (bag.size() > prev.size()) {
            if (seen[v]) throw ValidationError("vertex " + std::to_string(v + 1) + " is inserted twice");
            int s = 0;
            while (used >> s & 1ULL) ++s;
            const unsigned long long bit = 1ULL << s;
            unsigned long long U = 0, W = 0;
            auto slot_of_neighbour = [&](int u) -> unsigned long long {
                if (!seen[u]) return 0;
                if (slot[u] < 0)
                    throw ValidationError("edge between vertices " + std::to_string(std::min(u, v) + 1) + " and " +
                                          std::to_string(std::max(u, v) + 1) + " is in no bag");
                return 1ULL << slot[u];
            };
            for (int u : g.in(v)) U |= slot_of_neighbour(u);
            for (int w : g.out(v)) W |= slot_of_neighbour(w);
            // Entries with bit s are zero here; fill A|s (v in A) and A (v not in A) from T[A].
            for (unsigned long long A = used;; A = (A - 1) & used) {
                if ((A & U) == U) T[A | bit] = T[A];
                if (A & W) T[A] = 0;
                if (A == 0) break;
            }
            slot[v] = s;
            used |= bit;
            seen[v] = 1;
            seen_list.push_back(v);
        } else {
            const int s = slot[v];
            const unsigned long long bit = 1ULL << s;
            used &= ~bit;
            for (unsigned long long A = used;; A = (A - 1) & used) {
                T[A] += T[A | bit];
                T[A | bit] = 0;
                if (A == 0) break;
            }
            slot[v] = -1;
        }
        if (observe) {
            BigCount total = 0;
            for (unsigned long long A = used;; A = (A - 1) & used) {
                total += T[A];
                if (A == 0) break;
            }
            std::vector<int> sorted = seen_list;
            std::sort(sorted.begin(), sorted.end());
            observe(step, sorted, total);
        }
        prev = bag;
    }
    if (!prev.empty()) throw ValidationError("last bag of a nice decomposition must be empty");
    return T[0];
}

} // namespace

BigCount count_downsets(const Dag& g, const PathDecomposition& X, int max_width, const DpObserver& observe)
{
    if (auto why = decomposition_problem(g, X); !why.empty()) throw ValidationError("invalid path decomposition: " + why);
    if (!is_nice(X, g.size())) throw ValidationError("path decomposition is not nice");
    return run_table(g, X, max_width, observe);
}

BigCount count_downsets_present(const Dag& g, const PathDecomposition& X, int max_width, const DpObserver& observe)
{
    return run_table(g, X, max_width, observe);
}

namespace {

std::vector<int> reach_from(int v, int p, const std::function<const std::vector<int>&(int)>& next)
{
    std::vector<char> mark(p, 0);
    std::vector<int> stack{v}, out;
    mark[v] = 1;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (int y : next(x))
            if (!mark[y]) {
                mark[y] = 1;
                stack.push_back(y);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<int> descendants(const Dag& g, int v)
{
    return reach_from(v, g.size(), [&](int x) -> const std::vector<int>& { return g.out(x); });
}

std::vector<int> ancestors(const Dag& g, int v)
{
    return reach_from(v, g.size(), [&](int x) -> const std::vector<int>& { return g.in(x); });
}

BigCount uniform_below(const BigCount& n, std::mt19937_64& rng)
{
    if (n <= 0) throw Error("uniform_below needs a positive bound");
    const size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    const size_t words = (bits + 63) / 64;
    std::vector<unsigned long long> buf(words);
    for (;;) {
        for (auto& x : buf) x = rng();
        BigCount r;
        mpz_import(r.get_mpz_t(), words, 1, sizeof(unsigned long long), 0, 0, buf.data());
        // Drop surplus high bits so each draw succeeds with probability > 1/2.
        mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
        if (r < n) return r;
    }
}

DownsetSampler::DownsetSampler(Dag g, PathDecomposition X, int max_width)
    : g_(std::move(g)), X_(std::move(X)), max_width_(max_width)
{
    if (auto why = decomposition_problem(g_, X_); !why.empty()) throw ValidationError("invalid path decomposition: " + why);
    if (!is_nice(X_, g_.size())) X_ = to_nice(g_, X_);
    total_ = count_alive(std::vector<char>(g_.size(), 1));
}

const BigCount& DownsetSampler::count_alive(const std::vector<char>& alive)
{
    if (auto it = cache_.find(alive); it != cache_.end()) return it->second;
    if (cache_.size() > 200'000) cache_.clear();
    std::vector<int> keep;
    for (int v = 0; v < g_.size(); ++v)
        if (alive[v]) keep.push_back(v);
    BigCount c = count_downsets_present(g_, induced_decomposition(X_, keep), max_width_);
    return cache_.emplace(alive, std::move(c)).first->second;
}

std::vector<int> DownsetSampler::draw(std::mt19937_64& rng)
{
    std::vector<char> alive(g_.size(), 1);
    std::vector<int> Z;
    for (int v : g_.topological_order()) {
        if (!alive[v]) continue;
        std::vector<char> with = alive, without = alive;
        with[v] = 0;
        for (int d : descendants(g_, v)) without[d] = 0;
        const BigCount a1 = count_alive(with);
        const BigCount a0 = count_alive(without);
        const BigCount r = uniform_below(a1 + a0, rng) + 1;
        if (r <= a1) {
            Z.push_back(v);
            alive = std::move(with);
        } else {
            alive = std::move(without);
        }
    }
    std::sort(Z.begin(), Z.end());
    return Z;
}

std::vector<int> sample_downset(const Dag& g, const PathDecomposition& X, std::mt19937_64& rng)
{
    DownsetSampler s(g, X);
    return s.draw(rng);
}

} // namespace smp
