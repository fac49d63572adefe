#include "nnhash/block_hash.hpp"

namespace nnhash {

Digest hash_block(const Block& block, const SubKeys& keys, int t, Execution exec) {
  detail::require_iterations(t);
  return extract_digest<double>(run_network<double>(block, keys, t, exec).h);
}

}  // namespace nnhash
