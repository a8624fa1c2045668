// Thin typed client for the /v1 service.

import type {
  AnalysisPayload,
  DraftPromptPayload,
  DraftRecordPayload,
  HistoryPayload,
  ReferencePayload,
  RstPayload,
} from "./types.js";

export interface ApiError {
  code: string;
  message: string;
  field?: string;
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const body = await resp.json();
  if (!resp.ok) {
    throw Object.assign(new Error(body.message ?? resp.statusText), body as ApiError);
  }
  return body as T;
}

export class Api {
  constructor(private base: string = "") {}

  createProject(sourceText: string, referenceAbstract?: string): Promise<{ project_id: string }> {
    return request(`${this.base}/v1/projects`, {
      method: "POST",
      body: JSON.stringify({
        source_text: sourceText,
        reference_abstract: referenceAbstract ?? null,
      }),
    });
  }

  rst(projectId: string, scope = "full"): Promise<RstPayload> {
    return request(`${this.base}/v1/projects/${projectId}/rst?scope=${scope}`);
  }

  addDraft(projectId: string, text: string): Promise<DraftRecordPayload> {
    return request(`${this.base}/v1/projects/${projectId}/drafts`, {
      method: "POST",
      body: JSON.stringify({ text }),
    });
  }

  analyze(projectId: string, draftNo: number): Promise<AnalysisPayload> {
    return request(`${this.base}/v1/projects/${projectId}/drafts/${draftNo}/analyze`, {
      method: "POST",
    });
  }

  history(projectId: string): Promise<HistoryPayload> {
    return request(`${this.base}/v1/projects/${projectId}/history`);
  }

  reference(projectId: string, k: number): Promise<ReferencePayload> {
    return request(`${this.base}/v1/projects/${projectId}/reference?k=${k}`);
  }

  prompt(projectId: string, targetCount?: number): Promise<DraftPromptPayload> {
    return request(`${this.base}/v1/projects/${projectId}/prompt`, {
      method: "POST",
      body: JSON.stringify(targetCount ? { target_count: targetCount } : {}),
    });
  }

  strategies(): Promise<{ text: string }> {
    return request(`${this.base}/v1/strategies`);
  }
}
