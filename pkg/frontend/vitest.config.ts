import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // the flow suite boots the real service in a child process
    testTimeout: 15_000,
    hookTimeout: 60_000,
  },
});
