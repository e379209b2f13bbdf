#include "kwlab/forms.hpp"

namespace kwlab {

// The negative-control build compiles this file with KWLAB_FLIP_HODGE.
int hodge_base_orientation() {
#ifdef KWLAB_FLIP_HODGE
    return -1;
#else
    return 1;
#endif
}

}  // namespace kwlab
