namespace cartan {}
