#include <doctest.h>

TEST_SUITE_BEGIN("dynamics");
TEST_SUITE_END();
