#pragma once

#include "cleanq/queue.hpp"

namespace cleanq {

/* Pure pass-through module; exists to make stacking itself measurable. */
class NullModule final : public PassthroughModule {
public:
    using PassthroughModule::PassthroughModule;
};

} // namespace cleanq
