#include "dolgachev/cli/app.hpp"

int main(int argc, char** argv) { return dolgachev::cli::run(argc, argv); }
