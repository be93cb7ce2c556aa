# Graph, density, peeling, recolouring and oracle services
