#include "polarbd/list_decoder.hpp"

#include <algorithm>
#include <cstring>

namespace polarbd {

ListCrcDecoder::ListCrcDecoder(const CodeSpec& spec, int list_size)
    : spec_(spec), list_size_(list_size) {
    validate(spec_);
    if (list_size_ < 1) throw std::invalid_argument("list size must be positive");
    block_len_ = spec_.block_len_n;
    stages_ = log2_exact(block_len_);
    frozen_ = spec_.frozen_mask();
    info_positions_ = spec_.info_positions();

    const std::size_t l = static_cast<std::size_t>(list_size_);
    alpha_.resize(static_cast<std::size_t>(stages_) + 1);
    bl_.resize(static_cast<std::size_t>(stages_) + 1);
    out_.resize(static_cast<std::size_t>(stages_) + 1);
    for (int d = 0; d <= stages_; ++d) {
        const std::size_t s = static_cast<std::size_t>(block_len_ >> d);
        if (d >= 1) alpha_[static_cast<std::size_t>(d)].resize(l * s);
        out_[static_cast<std::size_t>(d)].resize(l * s);
        if (d < stages_) bl_[static_cast<std::size_t>(d)].resize(l * (s / 2));
    }
    u_.assign(l, std::vector<std::uint8_t>(static_cast<std::size_t>(block_len_), 0u));
    metric_.assign(l, 0.0);
    active_.assign(l, 0u);
}

void ListCrcDecoder::reset() {
    std::fill(active_.begin(), active_.end(), 0u);
    std::fill(metric_.begin(), metric_.end(), 0.0);
    for (auto& row : u_) std::fill(row.begin(), row.end(), 0u);
    active_[0] = 1u;
    active_count_ = 1;
}

void ListCrcDecoder::clone_slices(int from, int to) {
    for (int d = 1; d <= stages_; ++d) {
        const std::size_t s = static_cast<std::size_t>(block_len_ >> d);
        auto& a = alpha_[static_cast<std::size_t>(d)];
        std::copy_n(a.data() + from * s, s, a.data() + to * s);
    }
    for (int d = 0; d <= stages_; ++d) {
        const std::size_t s = static_cast<std::size_t>(block_len_ >> d);
        auto& o = out_[static_cast<std::size_t>(d)];
        std::copy_n(o.data() + from * s, s, o.data() + to * s);
        if (d < stages_) {
            auto& b = bl_[static_cast<std::size_t>(d)];
            std::copy_n(b.data() + from * (s / 2), s / 2, b.data() + to * (s / 2));
        }
    }
    u_[static_cast<std::size_t>(to)] = u_[static_cast<std::size_t>(from)];
}

void ListCrcDecoder::process_single(int start) {
    const std::size_t leaf = static_cast<std::size_t>(stages_);
    if (frozen_[static_cast<std::size_t>(start)]) {
        for (int l = 0; l < list_size_; ++l) {
            if (!active_[static_cast<std::size_t>(l)]) continue;
            const double a = alpha_[leaf][static_cast<std::size_t>(l)];
            if (a < 0.0) metric_[static_cast<std::size_t>(l)] -= a;
            u_[static_cast<std::size_t>(l)][static_cast<std::size_t>(start)] = 0u;
            out_[leaf][static_cast<std::size_t>(l)] = 0u;
        }
        return;
    }

    forks_.clear();
    std::vector<int> snapshot;
    snapshot.reserve(static_cast<std::size_t>(active_count_));
    for (int l = 0; l < list_size_; ++l) {
        if (!active_[static_cast<std::size_t>(l)]) continue;
        snapshot.push_back(l);
        const double a = alpha_[leaf][static_cast<std::size_t>(l)];
        const double m = metric_[static_cast<std::size_t>(l)];
        forks_.push_back({m + (a < 0.0 ? -a : 0.0), l, 0u});
        forks_.push_back({m + (a > 0.0 ? a : 0.0), l, 1u});
    }
    std::sort(forks_.begin(), forks_.end(), [](const Fork& x, const Fork& y) {
        if (x.metric != y.metric) return x.metric < y.metric;
        if (x.path != y.path) return x.path < y.path;
        return x.bit < y.bit;
    });
    const std::size_t rho = std::min<std::size_t>(static_cast<std::size_t>(list_size_), forks_.size());

    std::vector<std::uint8_t> keep0(static_cast<std::size_t>(list_size_), 0u);
    std::vector<std::uint8_t> keep1(static_cast<std::size_t>(list_size_), 0u);
    for (std::size_t i = 0; i < rho; ++i) {
        const Fork& f = forks_[i];
        (f.bit ? keep1 : keep0)[static_cast<std::size_t>(f.path)] = 1u;
    }

    for (int l : snapshot) {
        if (!keep0[static_cast<std::size_t>(l)] && !keep1[static_cast<std::size_t>(l)]) {
            active_[static_cast<std::size_t>(l)] = 0u;
            --active_count_;
        }
    }
    for (int l : snapshot) {
        const bool k0 = keep0[static_cast<std::size_t>(l)];
        const bool k1 = keep1[static_cast<std::size_t>(l)];
        if (!k0 && !k1) continue;
        const double a = alpha_[leaf][static_cast<std::size_t>(l)];
        const double pen0 = a < 0.0 ? -a : 0.0;
        const double pen1 = a > 0.0 ? a : 0.0;
        if (k0 && k1) {
            int t = -1;
            for (int c = 0; c < list_size_; ++c)
                if (!active_[static_cast<std::size_t>(c)]) {
                    t = c;
                    break;
                }
            clone_slices(l, t);
            active_[static_cast<std::size_t>(t)] = 1u;
            ++active_count_;
            metric_[static_cast<std::size_t>(t)] = metric_[static_cast<std::size_t>(l)] + pen1;
            u_[static_cast<std::size_t>(t)][static_cast<std::size_t>(start)] = 1u;
            out_[leaf][static_cast<std::size_t>(t)] = 1u;
        }
        const std::uint8_t bit = k0 ? 0u : 1u;
        metric_[static_cast<std::size_t>(l)] += k0 ? pen0 : pen1;
        u_[static_cast<std::size_t>(l)][static_cast<std::size_t>(start)] = bit;
        out_[leaf][static_cast<std::size_t>(l)] = bit;
    }
}

void ListCrcDecoder::rec(const double* shared_alpha, int start, int size, int depth) {
    if (size == 1) {
        process_single(start);
        return;
    }
    const int h = size / 2;
    const std::size_t d = static_cast<std::size_t>(depth);
    const std::size_t cs = static_cast<std::size_t>(h);  // child slice length

    for (int l = 0; l < list_size_; ++l) {
        if (!active_[static_cast<std::size_t>(l)]) continue;
        const double* a = depth == 0
                              ? shared_alpha
                              : alpha_[d].data() + static_cast<std::size_t>(l) * (cs * 2);
        double* c = alpha_[d + 1].data() + static_cast<std::size_t>(l) * cs;
        for (int i = 0; i < h; ++i) c[i] = f_minsum(a[i], a[i + h]);
    }
    rec(shared_alpha, start, h, depth + 1);

    for (int l = 0; l < list_size_; ++l) {
        if (!active_[static_cast<std::size_t>(l)]) continue;
        const std::uint8_t* lb = out_[d + 1].data() + static_cast<std::size_t>(l) * cs;
        std::uint8_t* saved = bl_[d].data() + static_cast<std::size_t>(l) * cs;
        std::memcpy(saved, lb, cs);
        const double* a = depth == 0
                              ? shared_alpha
                              : alpha_[d].data() + static_cast<std::size_t>(l) * (cs * 2);
        double* c = alpha_[d + 1].data() + static_cast<std::size_t>(l) * cs;
        for (int i = 0; i < h; ++i) c[i] = g_update(a[i], a[i + h], saved[i]);
    }
    rec(shared_alpha, start + h, h, depth + 1);

    for (int l = 0; l < list_size_; ++l) {
        if (!active_[static_cast<std::size_t>(l)]) continue;
        const std::uint8_t* rb = out_[d + 1].data() + static_cast<std::size_t>(l) * cs;
        const std::uint8_t* saved = bl_[d].data() + static_cast<std::size_t>(l) * cs;
        std::uint8_t* o = out_[d].data() + static_cast<std::size_t>(l) * (cs * 2);
        for (int i = 0; i < h; ++i) {
            o[i] = saved[i] ^ rb[i];
            o[i + h] = rb[i];
        }
    }
}

ListDecodeResult ListCrcDecoder::decode(const LlrVec& llr) {
    if (static_cast<int>(llr.size()) != block_len_)
        throw std::invalid_argument("llr length must equal N");
    reset();
    rec(llr.data(), 0, block_len_, 0);

    std::vector<std::pair<double, int>> order;
    for (int l = 0; l < list_size_; ++l)
        if (active_[static_cast<std::size_t>(l)]) order.push_back({metric_[static_cast<std::size_t>(l)], l});
    std::sort(order.begin(), order.end());

    ListDecodeResult result;
    int best = -1;
    std::vector<DecodeResult> decoded(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int l = order[i].second;
        decoded[i].u_est = u_[static_cast<std::size_t>(l)];
        decoded[i].codeword = polar_transform(decoded[i].u_est);
        bool pass = false;
        if (spec_.crc) pass = crc_check(extract_info(decoded[i], spec_), *spec_.crc);
        result.finalists.push_back({order[i].first, pass});
        if (best < 0 && pass) best = static_cast<int>(i);
    }
    const bool crc_selected = best >= 0;
    if (best < 0) best = 0;
    result.codeword = std::move(decoded[static_cast<std::size_t>(best)].codeword);
    result.u_est = std::move(decoded[static_cast<std::size_t>(best)].u_est);
    result.crc_pass = crc_selected;
    result.path_metric = order[static_cast<std::size_t>(best)].first;
    return result;
}

ListDecodeResult decode_list_crc(const LlrVec& llr, const CodeSpec& spec, int list_size) {
    return ListCrcDecoder(spec, list_size).decode(llr);
}

}  // namespace polarbd
