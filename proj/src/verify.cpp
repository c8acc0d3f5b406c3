namespace gkx {}
