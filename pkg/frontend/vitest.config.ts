import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // the integration suite boots the real evaluation service
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
