#pragma once

#include "polarbd/decoders.hpp"

namespace polarbd {

struct ListDecodeResult {
    BitVec codeword;
    BitVec u_est;
    bool crc_pass = false;
    double path_metric = 0.0;

    struct Finalist {
        double metric;
        bool crc_pass;
    };
    std::vector<Finalist> finalists;  // sorted by metric ascending
};

// Bit-by-bit successive-cancellation list decoding. The path metric adds |llr|
// whenever a decision contradicts the sign of its decision LLR, 0 otherwise.
// With a CRC configured, the lowest-metric CRC-passing path wins; otherwise
// the lowest-metric path is returned with crc_pass = false.
class ListCrcDecoder {
  public:
    ListCrcDecoder(const CodeSpec& spec, int list_size);
    ListDecodeResult decode(const LlrVec& llr);
    int list_size() const { return list_size_; }

  private:
    CodeSpec spec_;
    int list_size_;
    int block_len_;
    int stages_;
    std::vector<std::uint8_t> frozen_;
    std::vector<int> info_positions_;

    // Per-depth, per-path buffers; path l owns the l-th slice of each array.
    std::vector<std::vector<double>> alpha_;     // depth d: L x (N>>d), d >= 1
    std::vector<std::vector<std::uint8_t>> bl_;  // left-child codewords, L x (N>>(d+1))
    std::vector<std::vector<std::uint8_t>> out_; // node codewords, L x (N>>d)
    std::vector<std::vector<std::uint8_t>> u_;   // decision history, L x N
    std::vector<double> metric_;
    std::vector<std::uint8_t> active_;
    int active_count_ = 0;
    int next_bit_ = 0;

    struct Fork {
        double metric;
        int path;
        std::uint8_t bit;
    };
    std::vector<Fork> forks_;

    void reset();
    void clone_slices(int from, int to);
    void process_single(int start);
    void rec(const double* shared_alpha, int start, int size, int depth);
};

ListDecodeResult decode_list_crc(const LlrVec& llr, const CodeSpec& spec, int list_size);

}  // namespace polarbd
