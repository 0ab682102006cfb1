#pragma once

// Umbrella header for the whole library.

#include "bwmd/bwt.hpp"
#include "bwmd/corpus.hpp"
#include "bwmd/dendrogram.hpp"
#include "bwmd/distance_matrix.hpp"
#include "bwmd/ebwt.hpp"
#include "bwmd/embedding.hpp"
#include "bwmd/embedding_cache.hpp"
#include "bwmd/entropy.hpp"
#include "bwmd/errors.hpp"
#include "bwmd/eval.hpp"
#include "bwmd/experiments.hpp"
#include "bwmd/format.hpp"
#include "bwmd/hierarchical.hpp"
#include "bwmd/index_io.hpp"
#include "bwmd/kmeans.hpp"
#include "bwmd/knn.hpp"
#include "bwmd/lzjd.hpp"
#include "bwmd/metrics.hpp"
#include "bwmd/parallel.hpp"
#include "bwmd/projection_index.hpp"
#include "bwmd/rand.hpp"
#include "bwmd/sequence.hpp"
#include "bwmd/suffix_array.hpp"
#include "bwmd/vp_tree.hpp"
