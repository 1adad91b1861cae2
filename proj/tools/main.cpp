#include "ptdimer/cli.hpp"

int main(int argc, char** argv) {
    return ptdimer::cli::run(argc, argv);
}
